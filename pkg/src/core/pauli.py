"""Pauli String Module - signed Hermitian Pauli words and real Pauli sums."""

from dataclasses import dataclass
from math import cos, sin
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

import numpy as np

from ..config import Config
from .constants import PRUNE_TOL
from .errors import ConstructionError, DimensionLimitError, SiteMismatchError

# (x, z) 位元對應的字母
_LETTERS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS = {letter: bits for bits, letter in _LETTERS.items()}

Key = Tuple[int, int]


@dataclass(frozen=True, slots=True)
class PauliString:
    """
    m 個格點上帶正負號的 Hermitian Pauli 字。

    格點編號從 1 開始；格點 i 對應位元 1 << (num_sites - i)，
    因此格點 1 是計算基底索引的最高位。(x, z) = (1, 1) 直接代表 Y。
    """

    num_sites: int
    x_mask: int = 0
    z_mask: int = 0
    sign: int = 1

    def __post_init__(self):
        if self.num_sites < 1:
            raise ValueError(f"num_sites must be positive, got {self.num_sites}")
        full = (1 << self.num_sites) - 1
        if self.x_mask < 0 or self.z_mask < 0 or (self.x_mask | self.z_mask) & ~full:
            raise ValueError("Pauli masks exceed the number of sites")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    @classmethod
    def identity(cls, num_sites: int) -> "PauliString":
        return cls(num_sites)

    @classmethod
    def from_sites(
        cls, num_sites: int, letters: Mapping[int, str], sign: int = 1
    ) -> "PauliString":
        """
        由 {格點: 字母} 建立 Pauli 字。

        Args:
            num_sites: 格點數
            letters: 格點（1 起算）到 "I"/"X"/"Y"/"Z" 的映射
            sign: 正負號

        Returns:
            對應的 PauliString

        Raises:
            ValueError: 當格點超出範圍或字母不合法時
        """
        x_mask = z_mask = 0
        for site, letter in letters.items():
            if not 1 <= site <= num_sites:
                raise ValueError(f"site {site} outside 1..{num_sites}")
            if letter not in _BITS:
                raise ValueError(f"unknown Pauli letter {letter!r}")
            x_bit, z_bit = _BITS[letter]
            bit = 1 << (num_sites - site)
            if x_bit:
                x_mask |= bit
            if z_bit:
                z_mask |= bit
        return cls(num_sites, x_mask, z_mask, sign)

    @classmethod
    def from_label(cls, label: str, num_sites: int, sign: int = 1) -> "PauliString":
        """
        解析 "Y1 Z2 Y4" 形式的標籤；"I" 或空字串代表單位元。

        Args:
            label: 以空白分隔的「字母+格點」
            num_sites: 格點數
            sign: 正負號

        Returns:
            對應的 PauliString
        """
        letters: Dict[int, str] = {}
        for token in label.split():
            if token == "I":
                continue
            letter, site = token[0], token[1:]
            if not site.isdigit():
                raise ValueError(f"malformed Pauli token {token!r}")
            if int(site) in letters:
                raise ValueError(f"site {site} repeated in {label!r}")
            letters[int(site)] = letter
        return cls.from_sites(num_sites, letters, sign)

    @property
    def key(self) -> Key:
        return (self.x_mask, self.z_mask)

    def bit(self, site: int) -> int:
        return 1 << (self.num_sites - site)

    def letter(self, site: int) -> str:
        bit = self.bit(site)
        return _LETTERS[(int(bool(self.x_mask & bit)), int(bool(self.z_mask & bit)))]

    def support(self) -> Tuple[int, ...]:
        """非單位元作用的格點（遞增排序）。"""
        occupied = self.x_mask | self.z_mask
        return tuple(
            site for site in range(1, self.num_sites + 1) if occupied & self.bit(site)
        )

    def weight(self) -> int:
        return (self.x_mask | self.z_mask).bit_count()

    def unsigned(self) -> "PauliString":
        return PauliString(self.num_sites, self.x_mask, self.z_mask, 1)

    def negate(self) -> "PauliString":
        return PauliString(self.num_sites, self.x_mask, self.z_mask, -self.sign)

    def label(self) -> str:
        support = self.support()
        if not support:
            return "I"
        return " ".join(f"{self.letter(site)}{site}" for site in support)

    def __str__(self) -> str:
        return f"{float(self.sign):+.6f} * {self.label()}"


def _check_sites(a: PauliString, b: PauliString):
    if a.num_sites != b.num_sites:
        raise SiteMismatchError(
            f"site-count mismatch: {a.num_sites} vs {b.num_sites}"
        )


def multiply(a: PauliString, b: PauliString) -> Tuple[int, PauliString]:
    """
    計算 a·b = i^phase · word。

    以 P = i^{x·z} X^x Z^z 展開，交換 Z^{z_a} 與 X^{x_b} 產生 (-1)^{z_a·x_b}。

    Args:
        a: 左因子
        b: 右因子

    Returns:
        (phase_exponent mod 4, 正號的 Hermitian 字)

    Raises:
        SiteMismatchError: 當格點數不一致時
    """
    _check_sites(a, b)
    x_mask = a.x_mask ^ b.x_mask
    z_mask = a.z_mask ^ b.z_mask
    phase = (
        (a.x_mask & a.z_mask).bit_count()
        + (b.x_mask & b.z_mask).bit_count()
        + 2 * (a.z_mask & b.x_mask).bit_count()
        - (x_mask & z_mask).bit_count()
    )
    if a.sign * b.sign < 0:
        phase += 2
    return phase % 4, PauliString(a.num_sites, x_mask, z_mask, 1)


def commutes(a: PauliString, b: PauliString) -> bool:
    """辛內積為偶數時兩字對易。"""
    _check_sites(a, b)
    form = (a.x_mask & b.z_mask).bit_count() + (a.z_mask & b.x_mask).bit_count()
    return form % 2 == 0


def _accumulate(acc: Dict[Key, float], key: Key, value: float):
    acc[key] = acc.get(key, 0.0) + value


@dataclass(frozen=True)
class PauliSum:
    """
    實係數 Pauli 字的線性組合。

    每個 (x_mask, z_mask) 至多出現一次，字的正負號已併入係數，
    項目依鍵值排序，|係數| < PRUNE_TOL 的項已修剪。
    """

    num_sites: int
    terms: Tuple[Tuple[float, PauliString], ...] = ()

    def __post_init__(self):
        seen = set()
        for _, word in self.terms:
            if word.num_sites != self.num_sites:
                raise SiteMismatchError("term site count differs from the sum")
            if word.sign != 1:
                raise ValueError("PauliSum words must carry sign +1")
            if word.key in seen:
                raise ValueError(f"duplicate term {word.label()}")
            seen.add(word.key)

    @classmethod
    def from_terms(
        cls,
        num_sites: int,
        terms: Iterable[Tuple[float, PauliString]],
        tol: float = PRUNE_TOL,
    ) -> "PauliSum":
        """
        合併同類項、併入正負號並修剪。

        Args:
            num_sites: 格點數
            terms: (係數, 字) 序列
            tol: 修剪門檻

        Returns:
            正規化後的 PauliSum
        """
        acc: Dict[Key, float] = {}
        for coeff, word in terms:
            if word.num_sites != num_sites:
                raise SiteMismatchError(
                    f"site-count mismatch: {word.num_sites} vs {num_sites}"
                )
            _accumulate(acc, word.key, float(coeff) * word.sign)
        return cls._from_accumulator(num_sites, acc, tol)

    @classmethod
    def from_word(cls, word: PauliString, coeff: float = 1.0) -> "PauliSum":
        return cls.from_terms(word.num_sites, [(coeff, word)])

    @classmethod
    def _from_accumulator(
        cls, num_sites: int, acc: Mapping[Key, float], tol: float = PRUNE_TOL
    ) -> "PauliSum":
        items = sorted((key, value) for key, value in acc.items() if abs(value) >= tol)
        return cls(
            num_sites,
            tuple((value, PauliString(num_sites, x, z)) for (x, z), value in items),
        )

    def __iter__(self) -> Iterator[Tuple[float, PauliString]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def as_dict(self) -> Dict[Key, float]:
        return {word.key: coeff for coeff, word in self.terms}

    def coefficient_of(self, word: PauliString) -> float:
        """word 的係數（相對於 word 自身的正負號）。"""
        return self.as_dict().get(word.key, 0.0) * word.sign

    def norm_squared(self) -> float:
        return sum(coeff * coeff for coeff, _ in self.terms)

    def residual(self, other: "PauliSum") -> float:
        """係數差的絕對值總和。"""
        if other.num_sites != self.num_sites:
            raise SiteMismatchError("cannot compare sums on different site counts")
        mine, theirs = self.as_dict(), other.as_dict()
        return sum(
            abs(mine.get(key, 0.0) - theirs.get(key, 0.0))
            for key in set(mine) | set(theirs)
        )

    def __add__(self, other: "PauliSum") -> "PauliSum":
        if other.num_sites != self.num_sites:
            raise SiteMismatchError("cannot add sums on different site counts")
        return PauliSum.from_terms(self.num_sites, list(self.terms) + list(other.terms))

    def __mul__(self, scalar: float) -> "PauliSum":
        return PauliSum.from_terms(
            self.num_sites, [(coeff * scalar, word) for coeff, word in self.terms]
        )

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return "\n".join(f"{coeff:+.6f} * {word.label()}" for coeff, word in self.terms)


def rotate_conjugate(target: PauliSum, generator: PauliString, angle: float) -> PauliSum:
    """
    計算 R·target·R†，其中 R = exp(-i·angle·G/2)。

    與 G 對易的項不變；反對易的項 V 映射為 V·cosθ + (i·V·G)·sinθ。

    Args:
        target: 被共軛的 Pauli 和
        generator: 生成元 G（可帶負號）
        angle: 旋轉角（弧度）

    Returns:
        共軛後的 PauliSum（已修剪）

    Raises:
        SiteMismatchError: 當格點數不一致時
        ConstructionError: 當乘積相位不是實數時
    """
    if target.num_sites != generator.num_sites:
        raise SiteMismatchError(
            f"site-count mismatch: {target.num_sites} vs {generator.num_sites}"
        )
    c, s = cos(angle), sin(angle)
    acc: Dict[Key, float] = {}
    for coeff, word in target.terms:
        if commutes(word, generator):
            _accumulate(acc, word.key, coeff)
            continue
        _accumulate(acc, word.key, coeff * c)
        phase, product = multiply(word, generator)
        exponent = (phase + 1) % 4
        if exponent % 2:
            raise ConstructionError(
                f"non-real residual phase i^{exponent} rotating {word.label()} "
                f"by {generator.label()}"
            )
        _accumulate(acc, product.key, coeff * s * (1.0 if exponent == 0 else -1.0))
    return PauliSum._from_accumulator(target.num_sites, acc)


def conjugate_by_word(target: PauliSum, word: PauliString) -> PauliSum:
    """精確計算 W·target·W†：反對易的項變號。"""
    if target.num_sites != word.num_sites:
        raise SiteMismatchError(
            f"site-count mismatch: {target.num_sites} vs {word.num_sites}"
        )
    return PauliSum(
        target.num_sites,
        tuple(
            (coeff if commutes(term, word) else -coeff, term)
            for coeff, term in target.terms
        ),
    )


def _word_columns(word: PauliString, columns: np.ndarray) -> np.ndarray:
    # <c ^ x| P |c> = sign · i^{|x&z|} · (-1)^{|z&c|}
    base = word.sign * (1j ** ((word.x_mask & word.z_mask).bit_count() % 4))
    flips = np.bitwise_count(columns & word.z_mask) & 1
    return base * (1 - 2 * flips.astype(np.float64))


def to_dense(
    ps: Union[PauliSum, PauliString], max_sites: Optional[int] = None
) -> np.ndarray:
    """
    轉為 2^m × 2^m 稠密矩陣（格點 1 為最高位）。

    Args:
        ps: PauliSum 或單一 PauliString
        max_sites: 格點上限，預設為 Config.DENSE_LIMIT

    Returns:
        複數矩陣

    Raises:
        DimensionLimitError: 當格點數超過上限時
    """
    if isinstance(ps, PauliString):
        terms = [(1.0, ps)]
        num_sites = ps.num_sites
    else:
        terms = list(ps.terms)
        num_sites = ps.num_sites
    limit = Config.DENSE_LIMIT if max_sites is None else max_sites
    if num_sites > limit:
        raise DimensionLimitError(
            f"{num_sites} sites exceed the dense limit of {limit}"
        )
    dim = 1 << num_sites
    columns = np.arange(dim, dtype=np.int64)
    matrix = np.zeros((dim, dim), dtype=np.complex128)
    for coeff, word in terms:
        matrix[columns ^ word.x_mask, columns] += coeff * _word_columns(word, columns)
    return matrix
