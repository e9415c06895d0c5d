"""Shared pytest fixtures."""

import pytest

from src.config import Config
from src.core.pauli import PauliString


@pytest.fixture(autouse=True)
def restore_config():
    """每個測試結束後還原 Config（CLI 會以 --dense-limit 覆寫）。"""
    saved = {
        "DENSE_LIMIT": Config.DENSE_LIMIT,
        "EIGEN_METHOD": Config.EIGEN_METHOD,
        "WORKERS": Config.WORKERS,
        "LOG_LEVEL": Config.LOG_LEVEL,
    }
    yield
    for key, value in saved.items():
        setattr(Config, key, value)


@pytest.fixture
def word():
    """以標籤建立 Pauli 字：word("Y1 Z2", 3, sign=-1)。"""

    def build(label: str, num_sites: int, sign: int = 1) -> PauliString:
        return PauliString.from_label(label, num_sites, sign)

    return build

