"""Configuration Module - Load settings from the project dotenv file."""

from pathlib import Path
from typing import Any, Dict

from dotenv import dotenv_values

# 找到 qrac.env 文件的路徑（在專案根目錄）
BASE_DIR = Path(__file__).resolve().parent.parent
ENV_FILE = BASE_DIR / "qrac.env"

# 只讀取檔案內容，不寫入也不讀取行程的環境變數
_VALUES = dotenv_values(ENV_FILE) if ENV_FILE.exists() else {}

EIGEN_METHODS = ("jacobi", "lapack")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")
OVERRIDABLE = ("DENSE_LIMIT", "EIGEN_METHOD", "WORKERS", "LOG_LEVEL")


def _get_int(key: str, default: int) -> int:
    raw = _VALUES.get(key)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{key} must be an integer, got {raw!r}")


class Config:
    """應用程式配置類別。"""

    # 稠密矩陣路徑的 n 上限（維度 2^(n-1)）
    DENSE_LIMIT = _get_int("QRAC_DENSE_LIMIT", 10)

    # 特徵值求解器：jacobi（獨立參考實作）或 lapack（numpy.linalg.eigh）
    EIGEN_METHOD = (_VALUES.get("QRAC_EIGEN_METHOD") or "jacobi").lower()

    # 平行工作者數量
    WORKERS = _get_int("QRAC_WORKERS", 4)

    # 日誌等級
    LOG_LEVEL = (_VALUES.get("QRAC_LOG_LEVEL") or "INFO").upper()

    @classmethod
    def validate(cls):
        """
        驗證配置值是否在合法範圍內。

        Raises:
            ValueError: 當配置值不合法時
        """
        if not 2 <= cls.DENSE_LIMIT <= 12:
            raise ValueError(
                f"QRAC_DENSE_LIMIT must be between 2 and 12, got {cls.DENSE_LIMIT}"
            )
        if cls.EIGEN_METHOD not in EIGEN_METHODS:
            raise ValueError(
                f"QRAC_EIGEN_METHOD must be one of {EIGEN_METHODS}, got {cls.EIGEN_METHOD!r}"
            )
        if cls.WORKERS < 1:
            raise ValueError(f"QRAC_WORKERS must be >= 1, got {cls.WORKERS}")
        if cls.LOG_LEVEL not in LOG_LEVELS:
            raise ValueError(
                f"QRAC_LOG_LEVEL must be one of {LOG_LEVELS}, got {cls.LOG_LEVEL!r}"
            )

    @classmethod
    def override(cls, **kwargs: Any):
        """
        以命令列參數覆寫配置。

        Args:
            **kwargs: dense_limit / eigen_method / workers / log_level，值為 None 時忽略

        Raises:
            ValueError: 當鍵名未知或覆寫後配置不合法時（原配置保持不變）
        """
        updates: Dict[str, Any] = {}
        for key, value in kwargs.items():
            if value is None:
                continue
            attr = key.upper()
            if attr not in OVERRIDABLE:
                raise ValueError(f"Unknown configuration key: {key}")
            updates[attr] = value

        previous = {attr: getattr(cls, attr) for attr in updates}
        for attr, value in updates.items():
            setattr(cls, attr, value)
        try:
            cls.validate()
        except ValueError:
            # 驗證失敗時還原
            for attr, value in previous.items():
                setattr(cls, attr, value)
            raise

    @classmethod
    def eigen_dim_limit(cls) -> int:
        """稠密特徵分解允許的最大維度。"""
        return 2 ** (cls.DENSE_LIMIT - 1)

    @classmethod
    def get_oracle_config(cls) -> Dict[str, Any]:
        """
        獲取稠密數值後端配置。

        Returns:
            包含稠密後端配置的字典
        """
        return {
            "dense_limit": cls.DENSE_LIMIT,
            "eigen_dim_limit": cls.eigen_dim_limit(),
            "eigen_method": cls.EIGEN_METHOD,
        }

    @classmethod
    def get_runtime_config(cls) -> Dict[str, Any]:
        """
        獲取執行期配置。

        Returns:
            包含執行期配置的字典
        """
        return {
            "workers": cls.WORKERS,
            "log_level": cls.LOG_LEVEL,
        }


# 建立全域配置實例
config = Config()
