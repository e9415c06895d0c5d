"""QRAC Analysis Workflow - success probabilities, bounds and disturbance."""

import logging
import time
from dataclasses import dataclass, field
from functools import lru_cache
from math import ceil, log2, sqrt
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..config import Config
from ..core.codebook import QracInstance, encoding_matrix, int_to_bits
from ..core.constants import CONSTRUCTION_TOL, VERIFY_TOL
from ..core.decoder import decode_bit, observable_explicit, povm
from ..core.dense import commutator, expectation, operator_norm
from ..core.errors import ConstructionError
from ..core.pauli import to_dense
from ..circuit.simulator import circuit_to_unitary
from ..circuit.synthesis import decoding_circuit

logger = logging.getLogger(__name__)

REPORT_SCHEMA = "qrac-report/1"


@dataclass(frozen=True)
class ClosedForms:
    p_q: float
    p_c: float
    gap: float
    delta_I: float


@dataclass(frozen=True)
class Disturbance:
    """量測位元 1 對 O_2 的干擾：平均值與逐輸入最大值。"""

    term_i: float
    term_ii: float
    commutator_bound: float
    term_i_max: float
    term_ii_max: float


@dataclass(frozen=True)
class ShotResult:
    count: int
    seed: int
    noise: float
    empirical_p: float
    std_error: float
    witness: bool


@dataclass
class Report:
    """單一 n 的完整指標；稠密欄位在超過上限時為 None。"""

    n: int
    p_quantum_exact: Optional[float]
    p_quantum_closed: float
    p_classical: float
    gap: float
    commutator_norms: Dict[Tuple[int, int], float]
    delta_I: float
    disturbance: Optional[Disturbance]
    shots: Optional[ShotResult] = None
    reference_bounds: Dict[str, float] = field(default_factory=dict)
    circuit_success: Optional[float] = None
    required_shots: int = 0

    def max_commutator_norm(self) -> Optional[float]:
        if not self.commutator_norms:
            return None
        return max(self.commutator_norms.values())


# ========== 閉式解 ==========


def binary_entropy(p: float) -> float:
    """H(p)，採 0·log0 = 0。"""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    return -sum(q * log2(q) for q in (p, 1.0 - p) if q > 0.0)


def closed_forms(inst: QracInstance) -> ClosedForms:
    """
    閉式成功率、古典上界、差距與 Holevo 資訊差。

    Args:
        inst: QRAC 實例

    Returns:
        ClosedForms(p_q, p_c, gap, delta_I)
    """
    p_q = 0.5 * (1.0 + sqrt(inst.mu))
    p_c = (inst.n - 0.5) / inst.n
    return ClosedForms(p_q, p_c, p_q - p_c, inst.n * binary_entropy(p_q) - 1.0)


def reference_bounds(inst: QracInstance) -> Dict[str, float]:
    """
    參考曲線（只呈現，不驗證）：猜想上界 ½+½√(m/n) 與寬鬆上界 ½+½√(2^{m-1}/n)。
    """
    return {
        "conjectured": 0.5 + 0.5 * sqrt(inst.m / inst.n),
        "loose": 0.5 + 0.5 * sqrt(2 ** (inst.m - 1) / inst.n),
    }


def required_shots(inst: QracInstance, z: float = 3.0) -> int:
    """讓量子與古典差距超過 z 個標準誤所需的次數。"""
    forms = closed_forms(inst)
    return ceil(z * z * forms.p_q * (1.0 - forms.p_q) / (forms.gap * forms.gap))


# ========== 稠密計算 ==========


def success_table(inst: QracInstance) -> np.ndarray:
    """
    每個 (x, k) 的成功率 ⟨ψ_x|M_{x_k|k}|ψ_x⟩。

    Args:
        inst: QRAC 實例

    Returns:
        形狀 (2^n, n) 的陣列，第 k-1 行對應位元 k

    Raises:
        DimensionLimitError: 當 n 超過稠密上限時
    """
    states = encoding_matrix(inst)
    table = np.empty((1 << inst.n, inst.n))
    for k in range(1, inst.n + 1):
        pair = povm(inst, k)
        for value in range(1 << inst.n):
            bit = (value >> (inst.n - k)) & 1
            table[value, k - 1] = expectation(pair.element(bit), states[value])
    return table


def success_probability_exact(inst: QracInstance) -> float:
    """對所有 x 與 k 平均的成功率（暴力雙重加總）。"""
    return float(np.mean(success_table(inst)))


@lru_cache(maxsize=None)
def _dense_observable(n: int, k: int) -> np.ndarray:
    matrix = to_dense(observable_explicit(QracInstance(n), k))
    matrix.flags.writeable = False
    return matrix


def dense_observable(inst: QracInstance, k: int) -> np.ndarray:
    inst.check_dense()
    inst.check_index(k)
    return _dense_observable(inst.n, k)


def commutator_norm(inst: QracInstance, k: int, l: int) -> float:
    """
    ‖[O_k, O_l]‖。

    Raises:
        ValueError: 當 k = l 時
    """
    if k == l:
        raise ValueError("commutator_norm needs two distinct indices")
    return operator_norm(commutator(dense_observable(inst, k), dense_observable(inst, l)))


def commutator_norms(inst: QracInstance) -> Dict[Tuple[int, int], float]:
    return {
        (k, l): commutator_norm(inst, k, l)
        for k in range(1, inst.n + 1)
        for l in range(k + 1, inst.n + 1)
    }


def disturbance(inst: QracInstance) -> Disturbance:
    """
    先量測位元 1 再估計 O_2 時的干擾分解。

    P = M_{x_1|1}、Q = I - P；D = POP + QOQ，V = POQ + QOP（O = O_2）。
    term_ii = |⟨V⟩|，term_i = |⟨D⟩_post - ⟨D⟩|，對所有輸入取平均與最大值。

    Args:
        inst: QRAC 實例

    Returns:
        Disturbance

    Raises:
        ConstructionError: 當某個輸入的 term_ii 超過 ½‖[O_1, O_2]‖ 時
    """
    states = encoding_matrix(inst)
    o2 = dense_observable(inst, 2)
    bound = 0.5 * commutator_norm(inst, 1, 2)
    pair = povm(inst, 1)
    identity = np.eye(inst.dim)

    blocks = {}
    for b in (0, 1):
        p = pair.element(b)
        q = identity - p
        blocks[b] = (p, p @ o2 @ p + q @ o2 @ q, p @ o2 @ q + q @ o2 @ p)

    first_terms: List[float] = []
    second_terms: List[float] = []
    for value in range(1 << inst.n):
        psi = states[value]
        p, diagonal, cross = blocks[(value >> (inst.n - 1)) & 1]
        term_ii = abs(expectation(cross, psi))
        if term_ii > bound + VERIFY_TOL:
            raise ConstructionError(
                f"term (ii) {term_ii:.6g} exceeds the commutator bound {bound:.6g}"
            )
        projected = p @ psi
        post = projected / np.linalg.norm(projected)
        if abs(np.linalg.norm(post) - 1.0) >= CONSTRUCTION_TOL:
            raise ConstructionError("post-measurement state is not normalized")
        first_terms.append(abs(expectation(diagonal, post) - expectation(diagonal, psi)))
        second_terms.append(term_ii)

    return Disturbance(
        term_i=float(np.mean(first_terms)),
        term_ii=float(np.mean(second_terms)),
        commutator_bound=bound,
        term_i_max=max(first_terms),
        term_ii_max=max(second_terms),
    )


def circuit_success_probability(inst: QracInstance) -> float:
    """
    以降階後的解碼電路加計算基底量測得到的平均成功率。

    Args:
        inst: QRAC 實例

    Returns:
        平均成功率，應等於閉式 p_q
    """
    states = encoding_matrix(inst)
    values = np.arange(1 << inst.n)
    total = 0.0
    for k in range(1, inst.n + 1):
        unitary = circuit_to_unitary(decoding_circuit(inst, k))
        probabilities = np.abs(states @ unitary.T) ** 2
        decoded = np.array(
            [decode_bit(inst, k, int_to_bits(z, inst.m)) for z in range(inst.dim)]
        )
        bits_k = (values >> (inst.n - k)) & 1
        hits = decoded[None, :] == bits_k[:, None]
        total += float(np.sum(probabilities * hits))
    return total / (inst.n << inst.n)


# ========== 報告 ==========


def report(
    n_values: Sequence[int],
    shots: Optional[int] = None,
    seed: int = 0,
    noise: float = 0.0,
) -> List[Report]:
    """
    組合每個 n 的所有指標。

    Args:
        n_values: 要分析的 n
        shots: 若提供，另外執行取樣模擬
        seed: 取樣種子
        noise: 去極化率

    Returns:
        Report 清單（順序同 n_values）
    """
    from .shots import simulate_shots

    reports: List[Report] = []
    for n in n_values:
        inst = QracInstance(n)
        logger.info(f"📊 分析 n={n} 中...")
        start_time = time.time()

        forms = closed_forms(inst)
        dense = n <= Config.DENSE_LIMIT
        if not dense:
            logger.warning(f"⚠️  n={n} 超過稠密上限 {Config.DENSE_LIMIT}，只輸出閉式結果")

        result = Report(
            n=n,
            p_quantum_exact=success_probability_exact(inst) if dense else None,
            p_quantum_closed=forms.p_q,
            p_classical=forms.p_c,
            gap=forms.gap,
            commutator_norms=commutator_norms(inst) if dense else {},
            delta_I=forms.delta_I,
            disturbance=disturbance(inst) if dense else None,
            reference_bounds=reference_bounds(inst),
            circuit_success=circuit_success_probability(inst) if dense else None,
            required_shots=required_shots(inst),
        )
        if shots is not None:
            result.shots = simulate_shots(inst, shots, seed, noise)

        if result.p_quantum_exact is not None:
            drift = abs(result.p_quantum_exact - forms.p_q)
            if drift >= VERIFY_TOL:
                raise ConstructionError(
                    f"exact success probability drifts from the closed form by {drift:.3e}"
                )

        elapsed = time.time() - start_time
        logger.info(f"⏱️  n={n} 分析耗時: {elapsed:.2f} 秒")
        reports.append(result)
    return reports
