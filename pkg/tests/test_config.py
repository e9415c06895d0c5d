import pytest

from src.config import Config


def test_defaults_are_valid():
    Config.validate()
    assert Config.eigen_dim_limit() == 2 ** (Config.DENSE_LIMIT - 1)


def test_override_sets_and_validates():
    Config.override(dense_limit=6, eigen_method="lapack", workers=None)
    assert Config.DENSE_LIMIT == 6
    assert Config.EIGEN_METHOD == "lapack"
    assert Config.eigen_dim_limit() == 32
    assert Config.get_oracle_config() == {
        "dense_limit": 6,
        "eigen_dim_limit": 32,
        "eigen_method": "lapack",
    }


@pytest.mark.parametrize(
    "kwargs",
    [
        {"dense_limit": 1},
        {"dense_limit": 13},
        {"eigen_method": "qr"},
        {"workers": 0},
        {"log_level": "LOUD"},
        {"colour": "red"},
    ],
)
def test_override_rejects(kwargs):
    with pytest.raises(ValueError):
        Config.override(**kwargs)


def test_runtime_config():
    Config.override(workers=2, log_level="DEBUG")
    assert Config.get_runtime_config() == {"workers": 2, "log_level": "DEBUG"}


@pytest.mark.parametrize(
    "kwargs",
    [
        {"dense_limit": 20},
        {"dense_limit": 5, "eigen_method": "qr"},
        {"workers": 0, "log_level": "DEBUG"},
    ],
)
def test_rejected_override_leaves_config_untouched(kwargs):
    before = (Config.DENSE_LIMIT, Config.EIGEN_METHOD, Config.WORKERS, Config.LOG_LEVEL)
    with pytest.raises(ValueError):
        Config.override(**kwargs)
    assert (Config.DENSE_LIMIT, Config.EIGEN_METHOD, Config.WORKERS, Config.LOG_LEVEL) == before
    Config.validate()
