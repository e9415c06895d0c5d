"""Command-line surface of the QRAC toolkit."""

from .client import CheckFailed, CliConfig, QracCli, UsageError, parse_config
from .commands import QracCommands

__all__ = [
    "CheckFailed",
    "CliConfig",
    "QracCli",
    "UsageError",
    "parse_config",
    "QracCommands",
]
