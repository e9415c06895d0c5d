"""Serialization Workflow - JSON/CSV rendering and atomic file output."""

import csv
import io
import json
import os
import tempfile
from dataclasses import asdict
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from ..core.errors import OutputError
from .analysis import REPORT_SCHEMA, Report

CSV_COLUMNS = (
    "n",
    "p_quantum_exact",
    "p_quantum_closed",
    "p_classical",
    "gap",
    "delta_I",
    "max_commutator_norm",
    "term_i",
    "term_ii",
    "commutator_bound",
    "circuit_success",
    "required_shots",
    "p_conjectured",
    "p_loose",
    "empirical_p",
    "std_error",
)


def _number(value: Optional[float]) -> str:
    if value is None:
        return ""
    if isinstance(value, int):
        return str(value)
    return format(value, ".17g")


def report_to_dict(item: Report) -> Dict[str, Any]:
    data = asdict(item)
    data["commutator_norms"] = {
        f"{k},{l}": value for (k, l), value in item.commutator_norms.items()
    }
    return data


def reports_to_json(reports: Sequence[Report]) -> str:
    """版本化的 JSON 報告；浮點數以可完整還原的最短表示輸出。"""
    payload = {
        "schema": REPORT_SCHEMA,
        "reports": [report_to_dict(item) for item in reports],
    }
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def reports_to_csv(reports: Sequence[Report]) -> str:
    """
    每個 n 一列的 CSV，浮點數取 17 位有效數字。

    Args:
        reports: Report 清單

    Returns:
        CSV 文字
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for item in reports:
        dist = item.disturbance
        shots = item.shots
        row: List[Optional[float]] = [
            item.n,
            item.p_quantum_exact,
            item.p_quantum_closed,
            item.p_classical,
            item.gap,
            item.delta_I,
            item.max_commutator_norm(),
            dist.term_i if dist else None,
            dist.term_ii if dist else None,
            dist.commutator_bound if dist else None,
            item.circuit_success,
            item.required_shots,
            item.reference_bounds.get("conjectured"),
            item.reference_bounds.get("loose"),
            shots.empirical_p if shots else None,
            shots.std_error if shots else None,
        ]
        writer.writerow([_number(value) for value in row])
    return buffer.getvalue()


def to_json(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def write_atomic(path: Union[str, Path], text: str) -> Path:
    """
    先寫入同目錄的暫存檔，再以 os.replace 取代目標檔。

    Args:
        path: 目標路徑
        text: 檔案內容

    Returns:
        目標路徑

    Raises:
        OutputError: 寫入失敗時（暫存檔會被清除）
    """
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, temp_name = tempfile.mkstemp(
            dir=target.parent, prefix=f".{target.name}.", suffix=".tmp"
        )
    except OSError as e:
        raise OutputError(f"Failed to write {target}: {e}") from e
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(temp_name, target)
    except OSError as e:
        if os.path.exists(temp_name):
            os.remove(temp_name)
        raise OutputError(f"Failed to write {target}: {e}") from e
    return target
