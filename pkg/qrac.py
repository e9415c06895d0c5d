"""QRAC Toolkit 啟動腳本。"""

import logging
import sys

from src.config import Config
from src.cli.client import QracCli


def main() -> int:
    """主程式入口。"""
    # 驗證配置
    try:
        Config.validate()
    except ValueError as e:
        print(f"配置錯誤: {e}", file=sys.stderr)
        return 2

    # 進度訊息走 stderr，stdout 保留給機器輸出
    runtime_config = Config.get_runtime_config()
    logging.basicConfig(
        stream=sys.stderr,
        level=runtime_config["log_level"],
        format="%(message)s",
    )

    cli = QracCli()
    return cli.run(sys.argv[1:])


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\n正在中止...", file=sys.stderr)
        sys.exit(1)
