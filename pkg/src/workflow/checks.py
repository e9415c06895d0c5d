"""Verification Workflow - named invariant checks behind `verify`."""

import logging
import time
from dataclasses import dataclass
from math import sqrt
from typing import Callable, List, Tuple

import numpy as np

from ..config import Config
from ..core.codebook import (
    QracInstance,
    a_entry,
    a_pauli,
    a_squared_exact,
    displace,
    displacement,
    encode,
    encoding_matrix,
    int_to_bits,
    reference_state,
)
from ..core.constants import CONSTRUCTION_TOL, JACOBI_DIM_LIMIT, PROJECTOR_TOL, VERIFY_TOL
from ..core.decoder import (
    diagonal_word,
    observable_from_povm,
    parity_projector,
    povm,
    projector_sum,
    validate_povm,
    w_decomposition,
)
from ..core.dense import hermitian_eigen
from ..core.errors import ConstructionError, QracError
from ..core.pauli import conjugate_by_word, to_dense
from ..circuit.simulator import circuit_to_unitary, run_statevector
from ..circuit.synthesis import (
    decoding_circuit,
    diagonalization_rotations,
    encoding_circuit,
)
from .analysis import closed_forms, success_table

logger = logging.getLogger(__name__)

# 整數 A_n 檢查的上限（2^n · n² 次運算）
EXACT_A_LIMIT = 12
# 符號收縮檢查的上限
SYMBOLIC_LIMIT = 16
# 稠密 A_n 比對的上限
DENSE_A_LIMIT = 6


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    detail: str
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status != "FAIL"


class SkipCheck(Exception):
    """超出檢查適用範圍時拋出。"""


def _require(condition: bool, message: str):
    if not condition:
        raise ConstructionError(message)


def _require_dense(inst: QracInstance):
    if inst.n > Config.DENSE_LIMIT:
        raise SkipCheck(f"n={inst.n} exceeds the dense limit {Config.DENSE_LIMIT}")


# ========== 個別檢查 ==========


def check_a_matrix(inst: QracInstance) -> str:
    if inst.n > EXACT_A_LIMIT:
        raise SkipCheck(f"exact A_n check limited to n <= {EXACT_A_LIMIT}")
    _require(a_squared_exact(inst.n), f"A_{inst.n}^2 != {inst.n}·I")
    if inst.n > DENSE_A_LIMIT:
        return "A_n^2 = n·I (integer)"
    dense = to_dense(a_pauli(inst.n), max_sites=DENSE_A_LIMIT)
    size = 1 << inst.n
    entries = np.array(
        [
            [a_entry(int_to_bits(y, inst.n), int_to_bits(x, inst.n)) for x in range(size)]
            for y in range(size)
        ]
    )
    _require(np.array_equal(dense.real, entries), "dense A_n disagrees with a_entry")
    _require(
        np.allclose(dense @ dense, inst.n * np.eye(size), atol=VERIFY_TOL),
        "dense A_n^2 != n·I",
    )
    return "A_n^2 = n·I (integer and dense)"


def check_encoding_orthonormality(inst: QracInstance) -> str:
    _require_dense(inst)
    states = encoding_matrix(inst)
    values = np.arange(1 << inst.n)
    odd = states[(np.bitwise_count(values) & 1) == 1]
    gram = odd.conj() @ odd.T
    worst = float(np.max(np.abs(gram - np.eye(len(odd)))))
    _require(worst < CONSTRUCTION_TOL, f"odd states not orthonormal ({worst:.3e})")
    return f"{len(odd)} odd states orthonormal ({worst:.1e})"


def check_projector_algebra(inst: QracInstance) -> str:
    _require_dense(inst)
    worst = 0.0
    for k in range(1, inst.n + 1):
        for b in (0, 1):
            p = parity_projector(inst, k, b, "odd")
            q = parity_projector(inst, k, b, "even")
            worst = max(
                worst,
                float(np.max(np.abs(p @ q @ p - inst.mu * p))),
                float(np.max(np.abs(q @ p @ q - inst.mu * q))),
            )
    _require(worst < PROJECTOR_TOL, f"PQP != mu·P ({worst:.3e})")
    return f"PQP = mu·P, QPQ = mu·Q ({worst:.1e})"


def check_spectrum(inst: QracInstance) -> str:
    _require_dense(inst)
    root = sqrt(inst.mu)
    half = inst.dim // 2
    expected = np.array([1 - root] * half + [1 + root] * half)
    # 小維度時 Jacobi 與 LAPACK 互相對照
    methods = ("jacobi", "lapack") if inst.dim <= JACOBI_DIM_LIMIT else ("lapack",)
    worst = 0.0
    for k in range(1, inst.n + 1):
        for b in (0, 1):
            s = projector_sum(inst, k, b)
            for method in methods:
                values, _ = hermitian_eigen(s, method)
                worst = max(worst, float(np.max(np.abs(values - expected))))
    _require(worst < VERIFY_TOL, f"S_(k,b) spectrum off by {worst:.3e}")
    solvers = "/".join(methods)
    return f"spectrum(S) = 1±√μ, multiplicity {half}, {solvers} ({worst:.1e})"


def check_povm_validity(inst: QracInstance) -> str:
    _require_dense(inst)
    for k in range(1, inst.n + 1):
        validate_povm(povm(inst, k), spectral=True)
    return f"{inst.n} POVMs complete, positive, projective"


def check_observable_equivalence(inst: QracInstance) -> str:
    _require_dense(inst)
    for k in range(1, inst.n + 1):
        observable_from_povm(inst, k)
    return "M0 - M1 = Pauli form for every k"


def check_w_decomposition(inst: QracInstance) -> str:
    for k in range(1, inst.n + 1):
        w_decomposition(inst, k)
    return f"{inst.n} decompositions, Σc² = 1, pairwise anticommuting"


def check_symbolic_diagonalization(inst: QracInstance) -> str:
    if inst.n > SYMBOLIC_LIMIT:
        raise SkipCheck(f"symbolic contraction limited to n <= {SYMBOLIC_LIMIT}")
    total = 0
    for k in range(1, inst.n + 1):
        total += len(diagonalization_rotations(inst, k))
    return f"{total} rotations contract every O_k to E_k"


def check_gate_diagonalization(inst: QracInstance) -> str:
    _require_dense(inst)
    worst = 0.0
    for k in range(1, inst.n + 1):
        circuit = decoding_circuit(inst, k)
        _require(
            circuit.cnot_count() <= 2 * inst.m,
            f"k={k} uses {circuit.cnot_count()} CNOTs",
        )
        unitary = circuit_to_unitary(circuit)
        observable = to_dense(w_decomposition(inst, k).to_pauli_sum())
        rotated = unitary @ observable @ unitary.conj().T
        worst = max(worst, float(np.max(np.abs(rotated - to_dense(diagonal_word(inst, k))))))
    _require(worst < VERIFY_TOL, f"U O_k U† != E_k ({worst:.3e})")
    return f"U O_k U† = E_k ({worst:.1e})"


def check_encoding_circuit(inst: QracInstance) -> str:
    _require_dense(inst)
    reference = reference_state(inst.n)
    worst = 0.0
    count = 0
    for y in inst.inputs():
        if sum(y) % 2 == 0:
            continue
        data = displacement(y)
        target = encode(y)
        _require(
            np.allclose(displace(data, reference), target, atol=CONSTRUCTION_TOL),
            f"displaced reference differs from encode({y})",
        )
        output = run_statevector(encoding_circuit(y, inst))
        worst = max(worst, float(np.max(np.abs(data.global_sign * output - target))))
        count += 1
    _require(worst < VERIFY_TOL, f"encoding circuit deviates by {worst:.3e}")
    return f"{count} odd inputs prepared with sign (-1)^(v·y)"


def check_displacement_covariance(inst: QracInstance) -> str:
    if inst.n > EXACT_A_LIMIT:
        raise SkipCheck(f"covariance check limited to n <= {EXACT_A_LIMIT}")
    a_n = a_pauli(inst.n)
    for y in inst.inputs():
        if sum(y) % 2:
            moved = conjugate_by_word(a_n, displacement(y).operator())
            _require(moved == a_n, f"D A_n D† != A_n for y={y}")
    return "D(u,v) A_n D(u,v)† = A_n for every odd y"


def check_success_probability(inst: QracInstance) -> str:
    _require_dense(inst)
    table = success_table(inst)
    expected = closed_forms(inst).p_q
    worst = float(np.max(np.abs(table - expected)))
    _require(worst < PROJECTOR_TOL, f"per-term success deviates by {worst:.3e}")
    return f"every (x,k) term = {expected:.10f}"


CHECKS: Tuple[Tuple[str, Callable[[QracInstance], str]], ...] = (
    ("a_matrix_laws", check_a_matrix),
    ("encoding_orthonormality", check_encoding_orthonormality),
    ("projector_algebra", check_projector_algebra),
    ("projector_sum_spectrum", check_spectrum),
    ("povm_validity", check_povm_validity),
    ("observable_equivalence", check_observable_equivalence),
    ("w_decomposition", check_w_decomposition),
    ("symbolic_diagonalization", check_symbolic_diagonalization),
    ("gate_diagonalization", check_gate_diagonalization),
    ("encoding_circuit", check_encoding_circuit),
    ("displacement_covariance", check_displacement_covariance),
    ("success_probability", check_success_probability),
)


def run_checks(n: int) -> List[CheckResult]:
    """
    依序執行所有檢查。

    Args:
        n: 位元數

    Returns:
        CheckResult 清單；個別失敗不會中斷其餘檢查
    """
    inst = QracInstance(n)
    results: List[CheckResult] = []
    logger.info(f"🔍 驗證 n={n}（{len(CHECKS)} 項檢查）...")
    for name, check in CHECKS:
        start_time = time.time()
        try:
            detail = check(inst)
            status = "PASS"
        except SkipCheck as e:
            status, detail = "SKIP", str(e)
        except QracError as e:
            status, detail = "FAIL", str(e)
        except Exception as e:
            # 非預期的例外只記為該項失敗，其餘檢查照常執行
            logger.warning(f"⚠️  {name} 拋出 {type(e).__name__}: {e}")
            status, detail = "FAIL", f"{type(e).__name__}: {e}"
        elapsed = time.time() - start_time
        icon = {"PASS": "✅", "SKIP": "⏭️ ", "FAIL": "❌"}[status]
        logger.info(f"{icon} {name}（{elapsed:.2f} 秒）")
        results.append(CheckResult(name, status, detail, elapsed))
    return results
