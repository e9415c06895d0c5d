"""QRAC Command-Line Client Module."""

import argparse
import logging
import sys
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, TextIO

from ..config import Config
from ..core.codebook import Bits, parse_bits
from ..core.errors import ConstructionError, DimensionLimitError, OutputError

logger = logging.getLogger(__name__)

COMMAND_NAMES = ("verify", "encode", "circuit", "simulate", "analyze", "export")
FORMATS = ("native", "qasm", "json", "csv")

# 每個指令可接受的 --format（None 為人類可讀輸出）
ALLOWED_FORMATS = {
    "verify": (None, "json"),
    "encode": (None, "json"),
    "circuit": (None, "native", "qasm"),
    "simulate": (None, "json"),
    "analyze": (None, "json", "csv"),
    "export": (None, "json"),
}


class UsageError(Exception):
    """命令列用法錯誤（結束碼 2）。"""


class CheckFailed(Exception):
    """檢查失敗（結束碼 1）。"""


class QracParser(argparse.ArgumentParser):
    """以例外取代 argparse 的直接結束。"""

    def error(self, message: str):
        raise UsageError(message)


@dataclass
class CliConfig:
    """解析後的命令列設定。"""

    command: str
    n: Optional[int] = None
    k: Optional[int] = None
    y: Optional[Bits] = None
    shots: Optional[int] = None
    seed: int = 0
    noise: float = 0.0
    output_path: Optional[str] = None
    format: Optional[str] = None
    dense_limit: Optional[int] = None
    n_values: List[int] = field(default_factory=list)

    def validate(self):
        """
        在任何計算之前檢查互相依賴的參數。

        Raises:
            UsageError: 當參數組合不合法時
        """
        if self.command not in COMMAND_NAMES:
            raise UsageError(f"unknown command {self.command!r}")
        if self.format not in ALLOWED_FORMATS[self.command]:
            raise UsageError(f"{self.command} does not support --format {self.format}")

        if self.command == "analyze":
            if not self.n_values:
                raise UsageError("analyze requires --n-range A..B or --n N")
        elif self.n is None:
            raise UsageError(f"{self.command} requires --n")
        for n in self.n_values or [self.n]:
            if n < 2:
                raise UsageError(f"n must be >= 2, got {n}")

        if self.command == "circuit":
            if (self.k is None) == (self.y is None):
                raise UsageError("circuit requires exactly one of --k or --y")
        elif self.y is not None:
            raise UsageError(f"{self.command} does not take --y")
        if self.k is not None and self.n is not None and not 1 <= self.k <= self.n:
            raise UsageError(f"--k must be in 1..{self.n}, got {self.k}")
        if self.y is not None and self.n is not None and len(self.y) != self.n:
            raise UsageError(f"--y must have {self.n} bits, got {len(self.y)}")

        if self.shots is not None and self.shots < 1:
            raise UsageError(f"--shots must be >= 1, got {self.shots}")
        if self.seed < 0:
            raise UsageError(f"--seed must be non-negative, got {self.seed}")
        if not 0.0 <= self.noise < 1.0:
            raise UsageError(f"--noise must satisfy 0 <= noise < 1, got {self.noise}")


def _n_range(text: str) -> List[int]:
    start, sep, stop = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    try:
        first, last = int(start), int(stop)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers in {text!r}")
    if first > last:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(first, last + 1))


def _bits(text: str) -> Bits:
    try:
        return parse_bits(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> QracParser:
    """建立 argparse 解析器（只有長旗標）。"""
    common = QracParser(add_help=False)
    common.add_argument("--n", type=int, help="number of encoded bits (n >= 2)")
    common.add_argument("--format", choices=FORMATS, help="output format")
    common.add_argument("--output", dest="output_path", help="output file path")
    common.add_argument("--dense-limit", type=int, help="override the dense-path n limit")

    parser = QracParser(prog="qrac", description="Analytical (n, n-1) QRAC toolkit")
    subparsers = parser.add_subparsers(dest="command", parser_class=QracParser)

    subparsers.add_parser("verify", parents=[common], help="run the invariant suite")
    subparsers.add_parser("encode", parents=[common], help="print the codebook as JSON")

    circuit = subparsers.add_parser("circuit", parents=[common], help="write a circuit file")
    circuit.add_argument("--k", type=int, help="decoding circuit for bit k")
    circuit.add_argument("--y", type=_bits, help="encoding circuit for input y")

    simulate = subparsers.add_parser("simulate", parents=[common], help="seeded shot simulation")
    simulate.add_argument("--shots", type=int, default=100_000)
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--noise", type=float, default=0.0)

    analyze = subparsers.add_parser("analyze", parents=[common], help="write the metrics report")
    analyze.add_argument("--n-range", dest="n_values", type=_n_range, default=[])
    analyze.add_argument("--shots", type=int)
    analyze.add_argument("--seed", type=int, default=0)
    analyze.add_argument("--noise", type=float, default=0.0)

    export = subparsers.add_parser("export", parents=[common], help="export W decompositions")
    export.add_argument("--k", type=int, help="single bit index (default: all)")
    return parser


def parse_config(argv: Sequence[str]) -> CliConfig:
    """
    解析並驗證命令列參數。

    Raises:
        UsageError: 當參數不合法時
    """
    args = build_parser().parse_args(list(argv))
    if args.command is None:
        raise UsageError("a command is required: " + ", ".join(COMMAND_NAMES))
    values = vars(args)
    n_values = values.get("n_values") or []
    if args.command == "analyze" and not n_values and args.n is not None:
        n_values = [args.n]
    config = CliConfig(
        command=args.command,
        n=args.n,
        k=values.get("k"),
        y=values.get("y"),
        shots=values.get("shots"),
        seed=values.get("seed", 0),
        noise=values.get("noise", 0.0),
        output_path=args.output_path,
        format=args.format,
        dense_limit=args.dense_limit,
        n_values=n_values,
    )
    config.validate()
    return config


class QracCli:
    """命令列應用程式：解析、派送並轉換結束碼。"""

    def __init__(self, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None):
        """
        初始化命令列應用程式。

        Args:
            stdout: 機器輸出，預設 sys.stdout
            stderr: 錯誤訊息，預設 sys.stderr
        """
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr

    def _fail(self, kind: str, reason: str, code: int) -> int:
        reason = " ".join(str(reason).split())
        print(f"error: {kind}: {reason}", file=self.stderr)
        return code

    def run(self, argv: Sequence[str]) -> int:
        """
        執行一次命令。

        Args:
            argv: 不含程式名稱的參數

        Returns:
            結束碼：0 成功、1 檢查失敗、2 用法錯誤
        """
        from .commands import QracCommands

        try:
            config = parse_config(argv)
            if config.dense_limit is not None:
                try:
                    Config.override(dense_limit=config.dense_limit)
                except ValueError as e:
                    raise UsageError(str(e))
            return QracCommands(self.stdout).dispatch(config)
        except UsageError as e:
            return self._fail("usage", str(e), 2)
        except (DimensionLimitError, OutputError) as e:
            return self._fail("usage", str(e), 2)
        except (CheckFailed, ConstructionError) as e:
            return self._fail("check-failed", str(e), 1)
        except ValueError as e:
            return self._fail("usage", str(e), 2)
        except Exception:
            logger.exception("❌ 執行指令時發生未預期錯誤")
            raise
