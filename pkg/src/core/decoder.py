"""Decoder Module - optimal decoding POVMs and their Pauli observables."""

from dataclasses import dataclass
from math import sqrt
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from .codebook import QracInstance, check_bits, encoding_matrix, parity
from .constants import CONSTRUCTION_TOL, PROJECTOR_TOL, VERIFY_TOL
from .dense import DenseOperator, hermitian_eigen, is_hermitian
from .errors import ConstructionError
from .pauli import PauliString, PauliSum, commutes, to_dense

PARITIES = ("even", "odd")


@dataclass(frozen=True)
class PovmPair:
    """位元 k 的二元 POVM {M_{0|k}, M_{1|k}}。"""

    k: int
    m0: DenseOperator
    m1: DenseOperator

    def element(self, b: int) -> DenseOperator:
        if b not in (0, 1):
            raise ValueError(f"outcome must be 0 or 1, got {b}")
        return self.m0 if b == 0 else self.m1


@dataclass(frozen=True)
class WDecomposition:
    """O_k = Σ_j c_j W_j，W_j 兩兩反對易且 Σ c_j² = 1。"""

    k: int
    words: Tuple[PauliString, ...]
    coeffs: Tuple[float, ...]

    def __len__(self) -> int:
        return len(self.words)

    def to_pauli_sum(self) -> PauliSum:
        return PauliSum.from_terms(
            self.words[0].num_sites, list(zip(self.coeffs, self.words))
        )


# ========== 投影算子 ==========


def parity_projector(inst: QracInstance, k: int, b: int, parity_name: str) -> DenseOperator:
    """
    P^{(E)}_{k,b} 或 P^{(O)}_{k,b}：投影到 {|ψ_x⟩ : 同位為 parity_name 且 x_k = b}。

    Args:
        inst: QRAC 實例
        k: 位元索引（1 起算）
        b: 位元值
        parity_name: "even" 或 "odd"

    Returns:
        秩為 2^{n-2} 的正交投影算子

    Raises:
        DimensionLimitError: 當 n 超過稠密上限時
    """
    inst.check_index(k)
    if b not in (0, 1):
        raise ValueError(f"b must be 0 or 1, got {b}")
    if parity_name not in PARITIES:
        raise ValueError(f"parity must be one of {PARITIES}, got {parity_name!r}")
    states = encoding_matrix(inst)
    target = PARITIES.index(parity_name)
    values = np.arange(1 << inst.n)
    parities = np.bitwise_count(values) & 1
    bits_k = (values >> (inst.n - k)) & 1
    block = states[(parities == target) & (bits_k == b)]
    return block.T @ block.conj()


def projector_sum(inst: QracInstance, k: int, b: int) -> DenseOperator:
    """S_{k,b} = P^{(E)}_{k,b} + P^{(O)}_{k,b}。"""
    return parity_projector(inst, k, b, "even") + parity_projector(inst, k, b, "odd")


def _check_spectrum(s: DenseOperator, root: float):
    # S 的特徵值只有 1 ± √μ 時，最小多項式消去 S
    identity = np.eye(s.shape[0])
    residual = (s - (1 + root) * identity) @ (s - (1 - root) * identity)
    worst = float(np.max(np.abs(residual)))
    if worst >= VERIFY_TOL:
        raise ConstructionError(
            f"projector sum spectrum is not {{1±√μ}} (residual {worst:.3e})"
        )


def validate_povm(pair: PovmPair, spectral: bool = False):
    """
    檢查完備性、Hermitian、冪等性；spectral=True 時另以特徵值檢查正定性。

    Raises:
        ConstructionError: 任一條件不成立時
    """
    identity = np.eye(pair.m0.shape[0])
    completeness = float(np.max(np.abs(pair.m0 + pair.m1 - identity)))
    if completeness >= PROJECTOR_TOL:
        raise ConstructionError(f"POVM k={pair.k} is incomplete ({completeness:.3e})")
    for b in (0, 1):
        element = pair.element(b)
        if not is_hermitian(element):
            raise ConstructionError(f"M_{b}|{pair.k} is not Hermitian")
        idempotence = float(np.max(np.abs(element @ element - element)))
        if idempotence >= VERIFY_TOL:
            raise ConstructionError(
                f"M_{b}|{pair.k} is not a projector ({idempotence:.3e})"
            )
        if spectral:
            values, _ = hermitian_eigen(element)
            if values[0] < -PROJECTOR_TOL or values[-1] > 1 + PROJECTOR_TOL:
                raise ConstructionError(
                    f"M_{b}|{pair.k} eigenvalues leave [0, 1]: "
                    f"[{values[0]:.3e}, {values[-1]:.3e}]"
                )


def povm(inst: QracInstance, k: int) -> PovmPair:
    """
    最佳解碼 POVM：M_b = (S_{k,b} - (1-√μ)I) / (2√μ)。

    Args:
        inst: QRAC 實例
        k: 位元索引

    Returns:
        通過驗證的 PovmPair

    Raises:
        ConstructionError: 當 S_{k,b} 的譜或 POVM 條件不成立時
    """
    root = sqrt(inst.mu)
    identity = np.eye(inst.dim)
    elements = []
    for b in (0, 1):
        s = projector_sum(inst, k, b)
        _check_spectrum(s, root)
        elements.append((s - (1 - root) * identity) / (2 * root))
    pair = PovmPair(k, elements[0], elements[1])
    validate_povm(pair)
    return pair


# ========== Pauli 可觀測量 ==========


def _word(m: int, letters: Dict[int, str], sign: int = 1) -> PauliString:
    return PauliString.from_sites(m, letters, sign)


def _z_run(first: int, last: int) -> Dict[int, str]:
    return {site: "Z" for site in range(first, last + 1)}


def _y_chain(m: int, j: int, k: int) -> PauliString:
    """Y_j Z_{j+1}…Z_{k-1} Y_k。"""
    return _word(m, {j: "Y", **_z_run(j + 1, k - 1), k: "Y"})


def _x_chain(m: int, k: int, j: int) -> PauliString:
    """X_k Z_{k+1}…Z_{j-1} X_j。"""
    return _word(m, {k: "X", **_z_run(k + 1, j - 1), j: "X"})


def _x_tail(m: int, k: int) -> PauliString:
    """X_k Z_{k+1}…Z_m。"""
    return _word(m, {k: "X", **_z_run(k + 1, m)})


def _z_prefix_x(m: int, l: int) -> PauliString:
    """-Z_1…Z_{l-1} X_l。"""
    return _word(m, {**_z_run(1, l - 1), l: "X"}, sign=-1)


def diagonal_word(inst: QracInstance, k: int) -> PauliString:
    """E_k：k < n 時為 Z_k，k = n 時為 Z^{⊗(n-1)}。"""
    inst.check_index(k)
    if k < inst.n:
        return _word(inst.m, {k: "Z"})
    return _word(inst.m, _z_run(1, inst.m))


def off_diagonal_words(inst: QracInstance, k: int) -> List[PauliString]:
    """K_k 的 n-1 個字。"""
    inst.check_index(k)
    m = inst.m
    if k == inst.n:
        return [_z_prefix_x(m, l) for l in range(1, inst.n)]
    words = [_x_chain(m, k, l) for l in range(k + 1, inst.n)]
    words.append(_x_tail(m, k))
    words.extend(_y_chain(m, l, k) for l in range(1, k))
    return words


def observable_explicit(inst: QracInstance, k: int) -> PauliSum:
    """
    O_k = √((n-1)/n)·E_k + (1/√(n(n-1)))·K_k。

    Args:
        inst: QRAC 實例
        k: 位元索引

    Returns:
        恰有 n 項的 PauliSum
    """
    terms = [(sqrt(inst.mu), diagonal_word(inst, k))]
    terms.extend((inst.epsilon, word) for word in off_diagonal_words(inst, k))
    return PauliSum.from_terms(inst.m, terms)


def w_decomposition(inst: QracInstance, k: int) -> WDecomposition:
    """
    依區域 I / II / III 排列的 W_j 與 c_j（j = 1..n）。

    Args:
        inst: QRAC 實例
        k: 位元索引

    Returns:
        WDecomposition

    Raises:
        ConstructionError: 當 Σc² ≠ 1 或字之間不是兩兩反對易時
    """
    inst.check_index(k)
    n, m = inst.n, inst.m
    c_k, eps = sqrt(inst.mu), inst.epsilon
    words: List[PauliString] = []
    coeffs: List[float] = []
    if k == n:
        for j in range(1, n):
            words.append(_z_prefix_x(m, j))
            coeffs.append(eps)
        words.append(diagonal_word(inst, k))
        coeffs.append(c_k)
    else:
        for j in range(1, n + 1):
            if j < k:
                words.append(_y_chain(m, j, k))
                coeffs.append(eps)
            elif j == k:
                words.append(diagonal_word(inst, k))
                coeffs.append(c_k)
            elif j < n:
                words.append(_x_chain(m, k, j))
                coeffs.append(eps)
            else:
                words.append(_x_tail(m, k))
                coeffs.append(eps)

    total = sum(c * c for c in coeffs)
    if abs(total - 1.0) >= CONSTRUCTION_TOL:
        raise ConstructionError(f"W coefficients square-sum to {total!r}, not 1")
    for i, first in enumerate(words):
        for second in words[i + 1:]:
            if commutes(first, second):
                raise ConstructionError(
                    f"W words {first.label()} and {second.label()} commute"
                )
    return WDecomposition(k, tuple(words), tuple(coeffs))


def observable_from_povm(inst: QracInstance, k: int) -> DenseOperator:
    """
    O_k = M_{0|k} - M_{1|k}，並與顯式 Pauli 形式逐元比對。

    Raises:
        ConstructionError: 當兩種構造相差超過 1e-9 時
    """
    pair = povm(inst, k)
    observable = pair.m0 - pair.m1
    explicit = to_dense(observable_explicit(inst, k))
    mismatch = float(np.max(np.abs(observable - explicit)))
    if mismatch >= VERIFY_TOL:
        raise ConstructionError(
            f"POVM observable differs from the Pauli form for k={k} ({mismatch:.3e})"
        )
    return observable


def decode_bit(inst: QracInstance, k: int, outcome: Sequence[int]) -> int:
    """
    由計算基底量測結果解出 x_k。

    Args:
        inst: QRAC 實例
        k: 位元索引
        outcome: 長度 n-1 的量測位元

    Returns:
        k < n 時為第 k 個量測位元，k = n 時為所有量測位元的同位
    """
    inst.check_index(k)
    bits = check_bits(outcome)
    if len(bits) != inst.m:
        raise ValueError(f"expected {inst.m} outcome bits, got {len(bits)}")
    if k < inst.n:
        return bits[k - 1]
    return parity(bits)


def w_decomposition_json(decomp: WDecomposition) -> Dict[str, Any]:
    return {
        "k": decomp.k,
        "terms": [
            {"word": word.label(), "sign": word.sign, "coeff": coeff}
            for word, coeff in zip(decomp.words, decomp.coeffs)
        ],
    }
