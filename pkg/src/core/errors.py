"""Exception hierarchy for the QRAC toolkit."""


class QracError(Exception):
    """所有工具包錯誤的基底類別。"""


class SiteMismatchError(QracError, ValueError):
    """兩個 Pauli 物件的格點數不一致。"""


class DimensionLimitError(QracError, ValueError):
    """稠密表示超過配置的維度上限。"""


class ConstructionError(QracError, RuntimeError):
    """內部恆等式失敗，代表構造有錯。"""


class ConvergenceError(ConstructionError):
    """迭代求解器在預算內未收斂。"""


class OutputError(QracError, OSError):
    """輸出檔案無法寫入。"""
