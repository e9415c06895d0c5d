"""QRAC Command Handlers Module."""

import logging
import time
from pathlib import Path
from typing import Callable, Dict, TextIO

from ..circuit.export import to_native, to_qasm
from ..config import Config
from ..circuit.synthesis import decoding_circuit, encoding_circuit
from ..core.codebook import QracInstance, bits_to_str, codebook_json
from ..core.decoder import w_decomposition, w_decomposition_json
from ..workflow.analysis import report
from ..workflow.checks import run_checks
from ..workflow.serialize import reports_to_csv, reports_to_json, to_json, write_atomic
from ..workflow.shots import simulate_shots
from .client import CheckFailed, CliConfig

logger = logging.getLogger(__name__)


class QracCommands:
    """每個子指令一個處理函式；回傳結束碼。"""

    def __init__(self, stdout: TextIO):
        """
        初始化指令處理器。

        Args:
            stdout: 機器輸出的目的地
        """
        self.stdout = stdout
        self.handlers: Dict[str, Callable[[CliConfig], int]] = {
            "verify": self.verify,
            "encode": self.encode,
            "circuit": self.circuit,
            "simulate": self.simulate,
            "analyze": self.analyze,
            "export": self.export,
        }

    def dispatch(self, config: CliConfig) -> int:
        start_time = time.time()
        code = self.handlers[config.command](config)
        logger.info(f"⏱️  {config.command} 耗時: {time.time() - start_time:.2f} 秒")
        return code

    def _emit(self, config: CliConfig, text: str):
        # 指定 --output 時原子寫檔，否則輸出到 stdout
        if config.output_path:
            path = write_atomic(config.output_path, text)
            logger.info(f"💾 已寫入 {path}")
            print(path, file=self.stdout)
        else:
            self.stdout.write(text)

    def verify(self, config: CliConfig) -> int:
        """執行驗證套件，逐項列出 PASS/FAIL/SKIP。"""
        results = run_checks(config.n)
        if config.format == "json":
            payload = {
                "n": config.n,
                "oracle": Config.get_oracle_config(),
                "checks": [
                    {"name": r.name, "status": r.status, "detail": r.detail}
                    for r in results
                ],
            }
            self._emit(config, to_json(payload))
        else:
            lines = [f"{r.status:<5} {r.name:<26} {r.detail}" for r in results]
            passed = sum(1 for r in results if r.status == "PASS")
            lines.append(f"{passed}/{len(results)} checks passed for n={config.n}")
            self._emit(config, "\n".join(lines) + "\n")

        failed = [r.name for r in results if not r.passed]
        if failed:
            raise CheckFailed(",".join(failed))
        return 0

    def encode(self, config: CliConfig) -> int:
        """輸出編碼表 JSON。"""
        self._emit(config, to_json(codebook_json(QracInstance(config.n))))
        return 0

    def circuit(self, config: CliConfig) -> int:
        """寫出解碼（--k）或編碼（--y）電路檔。"""
        inst = QracInstance(config.n)
        if config.k is not None:
            circuit = decoding_circuit(inst, config.k)
            stem = f"qrac_n{config.n}_k{config.k}"
        else:
            circuit = encoding_circuit(config.y, inst)
            stem = f"qrac_n{config.n}_y{bits_to_str(config.y)}"

        if config.format == "qasm":
            text, suffix = to_qasm(circuit), ".qasm"
        else:
            text, suffix = to_native(circuit), ".qrac"
        path = Path(config.output_path) if config.output_path else Path(stem + suffix)
        write_atomic(path, text)
        logger.info(
            f"🔧 {circuit.header()}: {circuit.gate_count()} 個閘，"
            f"{circuit.cnot_count()} 個 CNOT"
        )
        print(path, file=self.stdout)
        return 0

    def simulate(self, config: CliConfig) -> int:
        """執行取樣模擬並輸出經驗成功率。"""
        result = simulate_shots(
            QracInstance(config.n), config.shots, config.seed, config.noise
        )
        if config.format == "json":
            payload = {
                "n": config.n,
                "shots": result.count,
                "seed": result.seed,
                "noise": result.noise,
                "empirical_p": result.empirical_p,
                "std_error": result.std_error,
                "witness": result.witness,
            }
            self._emit(config, to_json(payload))
        else:
            self._emit(
                config,
                f"n={config.n} shots={result.count} seed={result.seed} "
                f"noise={result.noise:.17g} empirical_p={result.empirical_p:.17g} "
                f"std_error={result.std_error:.17g} witness={str(result.witness).lower()}\n",
            )
        return 0

    def analyze(self, config: CliConfig) -> int:
        """產生報告（預設 JSON）。"""
        reports = report(config.n_values, config.shots, config.seed, config.noise)
        if config.format == "csv":
            self._emit(config, reports_to_csv(reports))
        else:
            self._emit(config, reports_to_json(reports))
        return 0

    def export(self, config: CliConfig) -> int:
        """匯出 W 分解 JSON。"""
        inst = QracInstance(config.n)
        indices = [config.k] if config.k is not None else range(1, inst.n + 1)
        payload = {
            "n": inst.n,
            "decompositions": [
                w_decomposition_json(w_decomposition(inst, k)) for k in indices
            ],
        }
        self._emit(config, to_json(payload))
        return 0
