"""Codebook Module - A_n sign structure and the (n, n-1) encoding states."""

from dataclasses import dataclass
from functools import lru_cache
from math import sqrt
from typing import Any, Dict, Iterator, List, Sequence, Tuple

import numpy as np

from ..config import Config
from .dense import StateVector
from .errors import DimensionLimitError
from .pauli import PauliString, PauliSum

Bits = Tuple[int, ...]


# ========== 位元工具 ==========


def parse_bits(text: str) -> Bits:
    """
    將 "0110" 形式的字串轉為位元組。

    Raises:
        ValueError: 當字串為空或含有 0/1 以外的字元時
    """
    if not text or any(ch not in "01" for ch in text):
        raise ValueError(f"invalid bitstring {text!r}")
    return tuple(int(ch) for ch in text)


def bits_to_str(bits: Sequence[int]) -> str:
    return "".join(str(bit) for bit in bits)


def bits_to_int(bits: Sequence[int]) -> int:
    """第一個位元為最高位。"""
    value = 0
    for bit in bits:
        value = (value << 1) | bit
    return value


def int_to_bits(value: int, length: int) -> Bits:
    return tuple((value >> (length - 1 - i)) & 1 for i in range(length))


def parity(bits: Sequence[int]) -> int:
    return sum(bits) % 2


def hamming(a: Sequence[int], b: Sequence[int]) -> int:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum(x != y for x, y in zip(a, b))


def check_bits(bits: Sequence[int]) -> Bits:
    values = tuple(bits)
    if not values or any(bit not in (0, 1) for bit in values):
        raise ValueError(f"invalid bitstring {values!r}")
    return values


# ========== 實例 ==========


@dataclass(frozen=True)
class QracInstance:
    """(n, n-1) 編碼的實例；m = n - 1 個量子位元，維度 2^m。"""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"n must be an integer >= 2 (no (1,0) code exists), got {self.n!r}")

    @property
    def m(self) -> int:
        return self.n - 1

    @property
    def dim(self) -> int:
        return 1 << self.m

    @property
    def epsilon(self) -> float:
        return 1.0 / sqrt(self.n * (self.n - 1))

    @property
    def mu(self) -> float:
        return (self.n - 1) / self.n

    def check_index(self, k: int):
        if not 1 <= k <= self.n:
            raise ValueError(f"bit index k must be in 1..{self.n}, got {k}")

    def check_bits(self, bits: Sequence[int]) -> Bits:
        values = check_bits(bits)
        if len(values) != self.n:
            raise ValueError(f"expected {self.n} bits, got {len(values)}")
        return values

    def check_dense(self):
        if self.n > Config.DENSE_LIMIT:
            raise DimensionLimitError(
                f"n={self.n} exceeds the dense limit of {Config.DENSE_LIMIT}"
            )

    def inputs(self) -> Iterator[Bits]:
        for value in range(1 << self.n):
            yield int_to_bits(value, self.n)


# ========== A_n ==========


def _a_entry_int(y: int, x: int) -> int:
    diff = y ^ x
    if diff == 0 or diff & (diff - 1):
        return 0
    # 翻轉位置之前的格點就是 diff 以上的高位
    prefix = x >> diff.bit_length()
    return -1 if prefix.bit_count() % 2 else 1


def a_entry(y: Sequence[int], x: Sequence[int]) -> int:
    """
    A_n 的矩陣元 (A_n)_{yx}。

    Args:
        y: 長度 n 的位元組
        x: 長度 n 的位元組

    Returns:
        Hamming 距離不為 1 時為 0；否則為 Π_{s<l} (-1)^{x_s}，l 為翻轉位置

    Raises:
        ValueError: 當長度不一致時
    """
    y, x = check_bits(y), check_bits(x)
    if len(y) != len(x):
        raise ValueError(f"length mismatch: {len(y)} vs {len(x)}")
    return _a_entry_int(bits_to_int(y), bits_to_int(x))


def a_pauli(n: int) -> PauliSum:
    """A_n = Σ_l Z_1…Z_{l-1} X_l。"""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    words = [
        PauliString.from_sites(n, {**{site: "Z" for site in range(1, l)}, l: "X"})
        for l in range(1, n + 1)
    ]
    return PauliSum.from_terms(n, [(1.0, word) for word in words])


def a_squared_exact(n: int) -> bool:
    """
    以整數運算檢查 A_n² = n·I，並確認非零元恰在 Hamming 距離 1 的位置。

    Args:
        n: 位元數

    Returns:
        全部成立時為 True
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    flips = [1 << shift for shift in range(n)]
    for y in range(1 << n):
        row: Dict[int, int] = {}
        for first in flips:
            x = y ^ first
            a1 = _a_entry_int(y, x)
            if a1 not in (1, -1):
                return False
            for second in flips:
                z = x ^ second
                row[z] = row.get(z, 0) + a1 * _a_entry_int(x, z)
        if any(value != (n if z == y else 0) for z, value in row.items()):
            return False
        if row.get(y) != n:
            return False
    return True


# ========== 編碼態 ==========


def _encode_int(value: int, n: int) -> StateVector:
    m = n - 1
    state = np.zeros(1 << m, dtype=np.complex128)
    if value.bit_count() % 2 == 0:
        state[value >> 1] = 1.0
        return state
    amplitude = 1.0 / sqrt(n)
    for shift in range(n):
        neighbour = value ^ (1 << shift)
        state[neighbour >> 1] += _a_entry_int(value, neighbour) * amplitude
    return state


def encode(x: Sequence[int]) -> StateVector:
    """
    |ψ_x⟩：偶同位為計算基底態，奇同位為相鄰偶同位態的帶號疊加。

    Args:
        x: 長度 n ≥ 2 的位元組

    Returns:
        維度 2^{n-1} 的單位向量
    """
    bits = check_bits(x)
    QracInstance(len(bits))
    return _encode_int(bits_to_int(bits), len(bits))


@lru_cache(maxsize=None)
def _encoding_matrix(n: int) -> np.ndarray:
    states = np.stack([_encode_int(value, n) for value in range(1 << n)])
    states.flags.writeable = False
    return states


def encoding_matrix(inst: QracInstance) -> np.ndarray:
    """所有 2^n 個編碼態，第 x 列為 |ψ_x⟩（唯讀）。"""
    inst.check_dense()
    return _encoding_matrix(inst.n)


def reference_input(n: int) -> Bits:
    return (0,) * (n - 1) + (1,)


def reference_state(n: int) -> StateVector:
    """(|0…0⟩ + Σ_k |e_k⟩)/√n。"""
    QracInstance(n)
    m = n - 1
    state = np.zeros(1 << m, dtype=np.complex128)
    state[0] = 1.0
    for k in range(1, m + 1):
        state[1 << (m - k)] = 1.0
    return state / sqrt(n)


# ========== 位移 ==========


@dataclass(frozen=True)
class DisplacementData:
    u: Bits
    v: Bits
    v_prime: Bits
    global_sign: int

    def operator(self) -> PauliString:
        """n 格點上的 Hermitian 字，與 Z(v)X(u) 只差一個全域相位。"""
        n = len(self.u)
        return PauliString(n, bits_to_int(self.u), bits_to_int(self.v))


def displacement(y: Sequence[int]) -> DisplacementData:
    """
    將奇同位輸入表示為參考態的 Pauli 位移。

    Args:
        y: 奇同位位元組

    Returns:
        DisplacementData，滿足 encode(y) = global_sign·Z(v')X(u)·reference_state

    Raises:
        ValueError: 當 y 為偶同位時
    """
    bits = check_bits(y)
    n = len(bits)
    QracInstance(n)
    if parity(bits) == 0:
        raise ValueError(f"displacement requires odd parity, got {bits_to_str(bits)}")
    u = tuple(a ^ b for a, b in zip(bits, reference_input(n)))
    v = tuple(sum(u[:l]) % 2 for l in range(n))
    v_prime = tuple(v[i] ^ v[n - 1] for i in range(n - 1))
    dot = sum(a * b for a, b in zip(v, bits)) % 2
    return DisplacementData(u, v, v_prime, -1 if dot else 1)


def displace(data: DisplacementData, state: np.ndarray) -> StateVector:
    """套用 global_sign·Z(v')X(u_1…u_{n-1})。"""
    m = len(data.v_prime)
    vector = np.asarray(state, dtype=np.complex128)
    if vector.shape != (1 << m,):
        raise ValueError(f"state of shape {vector.shape} does not match {m} qubits")
    x_mask = bits_to_int(data.u[:m])
    z_mask = bits_to_int(data.v_prime)
    index = np.arange(1 << m, dtype=np.int64)
    moved = np.empty_like(vector)
    moved[index ^ x_mask] = vector
    signs = 1 - 2 * (np.bitwise_count(index & z_mask) & 1).astype(np.float64)
    return data.global_sign * signs * moved


# ========== 匯出 ==========


def _format_amplitude(amplitude: complex, n: int) -> str:
    real, imag = amplitude.real, amplitude.imag
    if abs(imag) < 1e-15:
        for value, text in ((1.0, "1"), (-1.0, "-1")):
            if abs(real - value) < 1e-12:
                return text
            if abs(real - value / sqrt(n)) < 1e-12:
                return f"{text}/sqrt({n})"
        return format(real, ".17g")
    return f"{real:.17g}{imag:+.17g}j"


def codebook_json(inst: QracInstance) -> Dict[str, Any]:
    """
    匯出編碼表：每個輸入對應 (基底索引, 振幅) 的清單。

    Returns:
        可 JSON 序列化的字典
    """
    states = encoding_matrix(inst)
    entries: List[Dict[str, Any]] = []
    for value in range(1 << inst.n):
        state = states[value]
        support = np.flatnonzero(np.abs(state) > 1e-15)
        entries.append(
            {
                "input": bits_to_str(int_to_bits(value, inst.n)),
                "parity": "odd" if value.bit_count() % 2 else "even",
                "amplitudes": [
                    [int(index), _format_amplitude(complex(state[index]), inst.n)]
                    for index in support
                ],
            }
        )
    return {"n": inst.n, "qubits": inst.m, "codebook": entries}
