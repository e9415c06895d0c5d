from math import sqrt

import pytest

from src.config import Config
from src.core.codebook import QracInstance
from src.workflow.analysis import (
    binary_entropy,
    circuit_success_probability,
    closed_forms,
    commutator_norm,
    commutator_norms,
    disturbance,
    reference_bounds,
    report,
    required_shots,
    success_probability_exact,
    success_table,
)


def test_binary_entropy():
    assert binary_entropy(0.5) == pytest.approx(1.0)
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.2) == pytest.approx(binary_entropy(0.8))
    with pytest.raises(ValueError):
        binary_entropy(1.5)


def test_closed_forms_three_bits():
    forms = closed_forms(QracInstance(3))
    assert forms.p_q == pytest.approx(0.9082482905, abs=1e-10)
    assert forms.p_c == pytest.approx(5 / 6)
    assert forms.gap == pytest.approx(0.0749150, abs=1e-7)


def test_holevo_gap_two_bits():
    assert closed_forms(QracInstance(2)).delta_I == pytest.approx(0.20175207338571233, abs=1e-6)


def test_holevo_gap_grows():
    gaps = [closed_forms(QracInstance(n)).delta_I for n in range(2, 11)]
    assert all(b > a for a, b in zip(gaps, gaps[1:]))


def test_quantum_beats_classical():
    for n in range(2, 40):
        forms = closed_forms(QracInstance(n))
        assert forms.gap > 0


def test_reference_bounds():
    inst = QracInstance(4)
    bounds = reference_bounds(inst)
    assert bounds["conjectured"] == pytest.approx(closed_forms(inst).p_q)
    assert bounds["loose"] == pytest.approx(0.5 + 0.5 * sqrt(4 / 4))


def test_required_shots():
    assert required_shots(QracInstance(3)) == 134
    assert required_shots(QracInstance(3), z=1.0) == 15
    assert required_shots(QracInstance(6)) > required_shots(QracInstance(3))


@pytest.mark.parametrize("n", range(2, 9))
def test_exact_success_matches_closed_form(n):
    inst = QracInstance(n)
    assert success_probability_exact(inst) == pytest.approx(closed_forms(inst).p_q, abs=1e-9)


def test_every_term_equals_closed_form():
    inst = QracInstance(4)
    table = success_table(inst)
    assert table.shape == (16, 4)
    assert table == pytest.approx(closed_forms(inst).p_q, abs=1e-9)


def test_commutator_norms_small_codes():
    assert commutator_norm(QracInstance(2), 1, 2) == pytest.approx(2.0)
    norms = commutator_norms(QracInstance(3))
    assert set(norms) == {(1, 2), (1, 3), (2, 3)}
    assert norms[(1, 2)] == pytest.approx(1.0)
    assert norms[(1, 3)] == pytest.approx(1.0)


def test_commutator_norm_needs_distinct_indices():
    with pytest.raises(ValueError):
        commutator_norm(QracInstance(3), 2, 2)


def test_max_commutator_norm_does_not_grow(monkeypatch):
    monkeypatch.setattr(Config, "EIGEN_METHOD", "lapack")
    maxima = [max(commutator_norms(QracInstance(n)).values()) for n in range(3, 9)]
    assert all(b <= a + 1e-9 for a, b in zip(maxima, maxima[1:]))


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
def test_disturbance_respects_commutator_bound(n):
    result = disturbance(QracInstance(n))
    assert result.commutator_bound == pytest.approx(0.5 * commutator_norm(QracInstance(n), 1, 2))
    assert 0.0 <= result.term_ii <= result.term_ii_max <= result.commutator_bound + 1e-9
    assert 0.0 <= result.term_i <= result.term_i_max


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_circuit_success_matches_closed_form(n):
    inst = QracInstance(n)
    assert circuit_success_probability(inst) == pytest.approx(closed_forms(inst).p_q, abs=1e-9)


def test_report_dense_and_closed_only(monkeypatch):
    monkeypatch.setattr(Config, "DENSE_LIMIT", 3)
    small, large = report([3, 4])
    assert small.n == 3
    assert small.p_quantum_exact == pytest.approx(small.p_quantum_closed, abs=1e-9)
    assert small.max_commutator_norm() == pytest.approx(1.0)
    assert small.disturbance is not None
    assert small.circuit_success == pytest.approx(small.p_quantum_closed, abs=1e-9)
    assert small.shots is None

    assert large.n == 4
    assert large.p_quantum_exact is None
    assert large.commutator_norms == {}
    assert large.max_commutator_norm() is None
    assert large.disturbance is None
    assert large.circuit_success is None
    assert large.p_quantum_closed == pytest.approx(closed_forms(QracInstance(4)).p_q)
    assert large.required_shots > 0


def test_report_with_shots():
    (item,) = report([3], shots=2000, seed=5)
    assert item.shots is not None
    assert item.shots.count == 2000
    assert item.shots.seed == 5


def test_two_bit_disturbance_bound():
    assert disturbance(QracInstance(2)).commutator_bound == pytest.approx(1.0)
