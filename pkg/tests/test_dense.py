from math import sqrt

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from src.config import Config
from src.core import dense
from src.core.dense import (
    basis_state,
    commutator,
    expectation,
    hermitian_eigen,
    is_hermitian,
    operator_norm,
)
from src.core.errors import ConvergenceError, DimensionLimitError

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)


def random_hermitian(rng_seed: int, dim: int) -> np.ndarray:
    rng = np.random.default_rng(rng_seed)
    raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (raw + raw.conj().T)


@pytest.mark.parametrize("method", ["jacobi", "lapack"])
def test_diagonal_input(method):
    values, vectors = hermitian_eigen(np.diag([3.0, -1.0, 2.0]), method)
    assert np.allclose(values, [-1.0, 2.0, 3.0])
    assert np.allclose(np.abs(vectors), np.eye(3)[:, [1, 2, 0]])


@pytest.mark.parametrize("method", ["jacobi", "lapack"])
def test_hadamard_like_spectrum(method):
    values, vectors = hermitian_eigen((X + Z) / sqrt(2), method)
    assert np.allclose(values, [-1.0, 1.0])
    top = vectors[:, 1]
    assert abs(np.vdot(top, (X + Z) / sqrt(2) @ top) - 1.0) < 1e-12


@seed(3)
@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 24), st.sampled_from(["jacobi", "lapack"]))
def test_random_hermitian_reconstruction(rng_seed, dim, method):
    h = random_hermitian(rng_seed, dim)
    values, vectors = hermitian_eigen(h, method)
    assert np.all(np.diff(values) >= -1e-12)
    assert np.allclose(vectors.conj().T @ vectors, np.eye(dim), atol=1e-10)
    assert np.allclose(vectors @ np.diag(values) @ vectors.conj().T, h, atol=1e-9)


def test_jacobi_agrees_with_lapack():
    h = random_hermitian(2024, 32)
    jacobi, _ = hermitian_eigen(h, "jacobi")
    lapack, _ = hermitian_eigen(h, "lapack")
    assert np.allclose(jacobi, lapack, atol=1e-10)


def test_degenerate_spectrum():
    # ZZ + XX 在 Bell 基底上對角，特徵值 0 為二重
    values, vectors = hermitian_eigen(np.kron(Z, Z) + np.kron(X, X), "jacobi")
    assert np.allclose(values, [-2.0, 0.0, 0.0, 2.0])
    assert np.allclose(vectors.conj().T @ vectors, np.eye(4), atol=1e-12)


def test_empty_matrix():
    values, vectors = hermitian_eigen(np.zeros((0, 0)))
    assert values.shape == (0,)
    assert vectors.shape == (0, 0)
    assert operator_norm(np.zeros((0, 0))) == 0.0


def test_rejects_non_hermitian():
    with pytest.raises(ValueError):
        hermitian_eigen(np.array([[0, 1], [0, 0]]))


def test_rejects_unknown_method():
    with pytest.raises(ValueError):
        hermitian_eigen(Z, "qr")


def test_rejects_non_square():
    with pytest.raises(ValueError):
        hermitian_eigen(np.zeros((2, 3)))


def test_dimension_limit(monkeypatch):
    monkeypatch.setattr(Config, "DENSE_LIMIT", 2)
    with pytest.raises(DimensionLimitError):
        hermitian_eigen(np.eye(4))
    with pytest.raises(DimensionLimitError):
        operator_norm(np.eye(4))


def test_convergence_budget(monkeypatch):
    monkeypatch.setattr(dense, "JACOBI_MAX_SWEEPS", 0)
    with pytest.raises(ConvergenceError):
        hermitian_eigen(X, "jacobi")


def test_method_defaults_to_config(monkeypatch):
    monkeypatch.setattr(Config, "EIGEN_METHOD", "lapack")
    values, _ = hermitian_eigen(X)
    assert np.allclose(values, [-1.0, 1.0])


def test_large_default_solves_skip_jacobi(monkeypatch):
    calls = []

    def tracking_jacobi(h):
        calls.append(h.shape[0])
        return np.linalg.eigh(h)

    monkeypatch.setattr(Config, "EIGEN_METHOD", "jacobi")
    monkeypatch.setattr(dense, "_jacobi_eigh", tracking_jacobi)

    hermitian_eigen(random_hermitian(1, dense.JACOBI_DIM_LIMIT))
    assert calls == [dense.JACOBI_DIM_LIMIT]

    big = random_hermitian(2, 2 * dense.JACOBI_DIM_LIMIT)
    values, vectors = hermitian_eigen(big)
    assert calls == [dense.JACOBI_DIM_LIMIT]
    assert np.allclose(vectors @ np.diag(values) @ vectors.conj().T, big, atol=1e-9)

    # 明確指定時仍使用 Jacobi
    hermitian_eigen(big, "jacobi")
    assert calls == [dense.JACOBI_DIM_LIMIT, 2 * dense.JACOBI_DIM_LIMIT]


def test_operator_norm():
    assert operator_norm(-3 * Z) == pytest.approx(3.0)
    # 非 Hermitian：最大奇異值
    assert operator_norm(np.array([[0, 2], [0, 0]])) == pytest.approx(2.0)
    assert operator_norm(commutator(X, Z)) == pytest.approx(2.0)


@seed(5)
@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 16))
def test_operator_norm_is_submultiplicative(rng_seed, dim):
    a = random_hermitian(rng_seed, dim)
    b = random_hermitian(rng_seed + 1, dim) + 1j * np.eye(dim)
    norm_a, norm_b = operator_norm(a), operator_norm(b)
    assert operator_norm(a @ b) <= norm_a * norm_b * (1 + 1e-9) + 1e-12
    assert operator_norm(a + b) <= norm_a + norm_b + 1e-9
    assert operator_norm(a) == pytest.approx(float(np.linalg.norm(a, 2)), rel=1e-9)


def test_commutator():
    assert np.allclose(commutator(X, Z), np.array([[0, -2], [2, 0]]))
    assert np.allclose(commutator(Z, Z), 0)
    with pytest.raises(ValueError):
        commutator(X, np.eye(4))


def test_is_hermitian():
    assert is_hermitian(X)
    assert not is_hermitian(np.array([[0, 1j], [1j, 0]]))
    assert is_hermitian(np.zeros((0, 0)))


def test_expectation():
    plus = np.array([1, 1]) / sqrt(2)
    assert expectation(X, plus) == pytest.approx(1.0)
    assert expectation(Z, plus) == pytest.approx(0.0)
    assert expectation(Z, basis_state(1, 2)) == pytest.approx(-1.0)


def test_expectation_rejects_bad_input():
    with pytest.raises(ValueError):
        expectation(X, np.ones(3))
    with pytest.raises(ValueError):
        expectation(np.array([[0, 1], [0, 0]]), np.array([1, 1j]) / sqrt(2))


def test_basis_state_range():
    assert np.array_equal(basis_state(2, 4), [0, 0, 1, 0])
    with pytest.raises(ValueError):
        basis_state(4, 4)
