import pytest

from src.config import Config
from src.core.codebook import QracInstance
from src.workflow.analysis import closed_forms
from src.workflow.shots import BLOCK_SIZE, simulate_shots

THREE = QracInstance(3)


def test_million_shots_track_closed_form():
    result = simulate_shots(THREE, 1_000_000, seed=7)
    expected = closed_forms(THREE).p_q
    assert result.count == 1_000_000
    assert result.std_error == pytest.approx(0.000289, abs=2e-5)
    assert abs(result.empirical_p - expected) < 5 * result.std_error
    assert result.witness


def test_same_seed_same_result():
    first = simulate_shots(THREE, 50_000, seed=11)
    second = simulate_shots(THREE, 50_000, seed=11)
    assert first == second


def test_result_independent_of_worker_count():
    shots = 3 * BLOCK_SIZE + 17
    single = simulate_shots(THREE, shots, seed=3, workers=1)
    several = simulate_shots(THREE, shots, seed=3, workers=4)
    assert single == several


def test_worker_default_comes_from_config(monkeypatch):
    monkeypatch.setattr(Config, "WORKERS", 1)
    assert simulate_shots(THREE, 1000, seed=2) == simulate_shots(THREE, 1000, seed=2, workers=3)


def test_single_shot():
    result = simulate_shots(QracInstance(2), 1, seed=0)
    assert result.empirical_p in (0.0, 1.0)
    assert result.std_error == 0.0


def test_heavy_noise_washes_out_advantage():
    result = simulate_shots(THREE, 200_000, seed=9, noise=0.999)
    assert result.noise == 0.999
    assert abs(result.empirical_p - 0.5) < 0.01
    assert not result.witness


@pytest.mark.parametrize(
    "kwargs",
    [
        {"shots": 0, "seed": 1},
        {"shots": 10, "seed": -1},
        {"shots": 10, "seed": 1, "noise": 1.0},
        {"shots": 10, "seed": 1, "noise": -0.1},
    ],
)
def test_rejects_bad_arguments(kwargs):
    with pytest.raises(ValueError):
        simulate_shots(THREE, **kwargs)
