"""Dense Oracle Module - brute-force linear algebra used as ground truth."""

from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np
from numpy.typing import NDArray

from ..config import Config, EIGEN_METHODS
from .constants import (
    HERMITIAN_TOL,
    IMAG_TOL,
    JACOBI_DIM_LIMIT,
    JACOBI_MAX_SWEEPS,
    JACOBI_OFF_TOL,
)
from .errors import ConvergenceError, DimensionLimitError

StateVector = NDArray[np.complex128]
DenseOperator = NDArray[np.complex128]


def _as_square(matrix: np.ndarray) -> DenseOperator:
    array = np.asarray(matrix, dtype=np.complex128)
    if array.ndim != 2 or array.shape[0] != array.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {array.shape}")
    return array


def _check_dim(dim: int):
    limit = Config.eigen_dim_limit()
    if dim > limit:
        raise DimensionLimitError(f"dimension {dim} exceeds the dense limit of {limit}")


def is_hermitian(matrix: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    array = _as_square(matrix)
    if array.size == 0:
        return True
    return float(np.max(np.abs(array - array.conj().T))) < tol


def commutator(a: np.ndarray, b: np.ndarray) -> DenseOperator:
    """[A, B] = AB - BA。"""
    a, b = _as_square(a), _as_square(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a @ b - b @ a


def basis_state(index: int, dim: int) -> StateVector:
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} outside 0..{dim - 1}")
    state = np.zeros(dim, dtype=np.complex128)
    state[index] = 1.0
    return state


@lru_cache(maxsize=None)
def _round_robin(dim: int) -> Tuple[Tuple[np.ndarray, np.ndarray], ...]:
    # 循環賽排程：每一輪的 (p, q) 互不重疊，可整輪向量化旋轉
    players = list(range(dim)) + ([-1] if dim % 2 else [])
    size = len(players)
    rounds: List[Tuple[np.ndarray, np.ndarray]] = []
    for _ in range(size - 1):
        pairs = [
            (min(a, b), max(a, b))
            for a, b in (
                (players[i], players[size - 1 - i]) for i in range(size // 2)
            )
            if a >= 0 and b >= 0
        ]
        rounds.append(
            (
                np.array([p for p, _ in pairs], dtype=np.intp),
                np.array([q for _, q in pairs], dtype=np.intp),
            )
        )
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _off_mass(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.vdot(off, off).real)


def _jacobi_round(a: np.ndarray, vecs: np.ndarray, p: np.ndarray, q: np.ndarray):
    app = a[p, p].real
    aqq = a[q, q].real
    apq = a[p, q]
    mag = np.abs(apq)
    active = mag > 0
    safe = np.where(active, mag, 1.0)

    with np.errstate(over="ignore", invalid="ignore"):
        tau = (aqq - app) / (2.0 * safe)
        t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
    t = np.where(active & np.isfinite(t), t, 0.0)
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    phase = np.where(active, apq / safe, 1.0).conj()

    # U = [[c, s], [-s·e^{-iφ}, c·e^{-iφ}]]，作用於 (p, q) 子空間
    u00, u01, u10, u11 = c, s, -s * phase, c * phase

    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = col_p * u00 + col_q * u10
    a[:, q] = col_p * u01 + col_q * u11

    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = np.conj(u00)[:, None] * row_p + np.conj(u10)[:, None] * row_q
    a[q, :] = np.conj(u01)[:, None] * row_p + np.conj(u11)[:, None] * row_q
    a[p, q] = 0.0
    a[q, p] = 0.0

    vec_p = vecs[:, p].copy()
    vec_q = vecs[:, q].copy()
    vecs[:, p] = vec_p * u00 + vec_q * u10
    vecs[:, q] = vec_p * u01 + vec_q * u11


def _jacobi_eigh(h: DenseOperator) -> Tuple[NDArray[np.float64], DenseOperator]:
    a = 0.5 * (h + h.conj().T)
    dim = a.shape[0]
    vecs = np.eye(dim, dtype=np.complex128)
    scale = max(1.0, float(np.vdot(a, a).real))
    threshold = JACOBI_OFF_TOL * scale

    sweeps = 0
    while _off_mass(a) > threshold:
        if sweeps == JACOBI_MAX_SWEEPS:
            raise ConvergenceError(
                f"Jacobi did not converge within {JACOBI_MAX_SWEEPS} sweeps "
                f"(off-diagonal mass {_off_mass(a):.3e})"
            )
        for p, q in _round_robin(dim):
            _jacobi_round(a, vecs, p, q)
        sweeps += 1

    values = a.diagonal().real.copy()
    order = np.argsort(values, kind="stable")
    return values[order], vecs[:, order]


def hermitian_eigen(
    h: np.ndarray, method: Optional[str] = None
) -> Tuple[NDArray[np.float64], DenseOperator]:
    """
    Hermitian 矩陣的特徵分解。

    Args:
        h: Hermitian 矩陣（容差 1e-10）
        method: "jacobi" 或 "lapack"。未指定時取 Config.EIGEN_METHOD，
            但維度超過 JACOBI_DIM_LIMIT 時一律使用 lapack

    Returns:
        (遞增排序的特徵值, 以行為單位的正交歸一特徵向量)

    Raises:
        DimensionLimitError: 當維度超過上限時
        ValueError: 當輸入不是 Hermitian 或方法未知時
        ConvergenceError: 當 Jacobi 在迭代預算內未收斂時
    """
    matrix = _as_square(h)
    _check_dim(matrix.shape[0])
    if not is_hermitian(matrix):
        raise ValueError("hermitian_eigen requires a Hermitian matrix")

    if method is None:
        method = Config.EIGEN_METHOD
        if matrix.shape[0] > JACOBI_DIM_LIMIT:
            method = "lapack"
    method = method.lower()
    if method not in EIGEN_METHODS:
        raise ValueError(f"unknown eigen method {method!r}")
    if method == "lapack":
        values, vectors = np.linalg.eigh(matrix)
        return values, vectors
    return _jacobi_eigh(matrix)


def operator_norm(a: np.ndarray) -> float:
    """
    最大奇異值；Hermitian 輸入時即 max|特徵值|。

    Raises:
        DimensionLimitError: 當維度超過上限時
    """
    matrix = _as_square(a)
    _check_dim(matrix.shape[0])
    if matrix.size == 0:
        return 0.0
    if is_hermitian(matrix):
        values, _ = hermitian_eigen(matrix)
        return float(np.max(np.abs(values)))
    values, _ = hermitian_eigen(matrix.conj().T @ matrix)
    return float(np.sqrt(max(float(values[-1]), 0.0)))


def expectation(a: np.ndarray, psi: np.ndarray) -> float:
    """
    計算 ⟨ψ|A|ψ⟩。

    Args:
        a: Hermitian 運算子
        psi: 狀態向量

    Returns:
        期望值（實數）

    Raises:
        ValueError: 當維度不符或虛部不可忽略時
    """
    matrix = _as_square(a)
    state = np.asarray(psi, dtype=np.complex128)
    if state.shape != (matrix.shape[0],):
        raise ValueError(
            f"state of shape {state.shape} does not match operator {matrix.shape}"
        )
    value = np.vdot(state, matrix @ state)
    if abs(value.imag) >= IMAG_TOL:
        raise ValueError(f"expectation has imaginary part {value.imag:.3e}")
    return float(value.real)
