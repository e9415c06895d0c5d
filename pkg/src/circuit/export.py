"""Circuit Export Module - native `.qrac` text and OpenQASM 2.0 renderers."""

from typing import List, Tuple

from .ir import Circuit, Gate
from .synthesis import expand_mcry

NATIVE_MAGIC = "# qrac-circuit 1"

_QASM_NAMES = {
    "H": "h",
    "X": "x",
    "Z": "z",
    "S": "s",
    "SDG": "sdg",
    "RY": "ry",
    "RZ": "rz",
    "CNOT": "cx",
}


def _angle(value: float) -> str:
    return format(value, ".17g")


def to_native(circuit: Circuit) -> str:
    """
    原生格式：每行一個閘（名稱、線、角度）；MCRY 為「控制 極性 目標 角度」。

    Args:
        circuit: 電路

    Returns:
        以換行結尾的文字
    """
    lines = [NATIVE_MAGIC, f"# {circuit.header()}", f"qubits {circuit.num_qubits}"]
    for gate in circuit.gates:
        if gate.name == "MCRY":
            controls = ",".join(str(wire) for wire in gate.controls) or "-"
            polarity = "".join(str(bit) for bit in gate.polarity) or "-"
            lines.append(f"MCRY {controls} {polarity} {gate.target} {_angle(gate.angle)}")
            continue
        parts = [gate.name, *(str(wire) for wire in gate.wires)]
        if gate.angle is not None:
            parts.append(_angle(gate.angle))
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def _parse_header(text: str) -> Tuple[int, str]:
    fields = text.split()
    if not fields or not fields[0].startswith("n="):
        raise ValueError(f"malformed circuit header {text!r}")
    return int(fields[0][2:]), " ".join(fields[1:])


def parse_native(text: str) -> Circuit:
    """
    解析 to_native 的輸出。

    Raises:
        ValueError: 當格式不正確時
    """
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if len(lines) < 3 or lines[0] != NATIVE_MAGIC:
        raise ValueError("not a native qrac circuit")
    n, label = _parse_header(lines[1].lstrip("#").strip())
    header = lines[2].split()
    if len(header) != 2 or header[0] != "qubits":
        raise ValueError(f"expected a qubits line, got {lines[2]!r}")

    gates: List[Gate] = []
    for line in lines[3:]:
        fields = line.split()
        name = fields[0]
        if name == "MCRY":
            if len(fields) != 5:
                raise ValueError(f"malformed MCRY line {line!r}")
            controls = () if fields[1] == "-" else tuple(int(w) for w in fields[1].split(","))
            polarity = () if fields[2] == "-" else tuple(int(b) for b in fields[2])
            gates.append(Gate("MCRY", controls + (int(fields[3]),), float(fields[4]), polarity))
        elif name in ("RY", "RZ"):
            if len(fields) != 3:
                raise ValueError(f"malformed {name} line {line!r}")
            gates.append(Gate(name, (int(fields[1]),), float(fields[2])))
        else:
            gates.append(Gate(name, tuple(int(w) for w in fields[1:])))
    return Circuit(int(header[1]), tuple(gates), n, label)


def to_qasm(circuit: Circuit) -> str:
    """
    OpenQASM 2.0 輸出；MCRY 先展開為 CNOT + RY。

    Args:
        circuit: 電路

    Returns:
        QASM 文字
    """
    expanded = expand_mcry(circuit)
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"// {circuit.header()}",
        f"qreg q[{circuit.num_qubits}];",
    ]
    for gate in expanded.gates:
        name = _QASM_NAMES[gate.name]
        wires = ",".join(f"q[{wire}]" for wire in gate.wires)
        if gate.angle is not None:
            lines.append(f"{name}({_angle(gate.angle)}) {wires};")
        else:
            lines.append(f"{name} {wires};")
    return "\n".join(lines) + "\n"
