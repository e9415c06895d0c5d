"""Circuit IR Module - rotation steps, gates and circuits."""

from dataclasses import dataclass, replace
from typing import Optional, Sequence, Tuple

from ..core.errors import ConstructionError
from ..core.pauli import PauliString

STAGES = ("left", "right")

# 名稱 -> 作用的線數（MCRY 為可變）
GATE_ARITY = {
    "H": 1,
    "X": 1,
    "Z": 1,
    "S": 1,
    "SDG": 1,
    "RY": 1,
    "RZ": 1,
    "CNOT": 2,
    "MCRY": None,
}
ROTATIONS = ("RY", "RZ", "MCRY")


@dataclass(frozen=True)
class RotationStep:
    """R_m = exp(-i·angle·G/2)；格點為 1 起算。"""

    generator: PauliString
    angle: float
    stage: str
    m: int

    def __post_init__(self):
        if self.stage not in STAGES:
            raise ValueError(f"stage must be one of {STAGES}, got {self.stage!r}")
        support = self.generator.support()
        if not support or self.generator.weight() > 2:
            raise ConstructionError(
                f"generator {self.generator.label()} is not one- or two-body"
            )
        if not set(support) <= {self.m, self.m + 1}:
            raise ConstructionError(
                f"generator {self.generator.label()} leaves sites {self.m},{self.m + 1}"
            )


@dataclass(frozen=True)
class Gate:
    """
    單一閘；線為 0 起算。

    MCRY 的 wires 為 controls + (target,)，polarity 為每個控制位元要求的值。
    """

    name: str
    wires: Tuple[int, ...]
    angle: Optional[float] = None
    polarity: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.name not in GATE_ARITY:
            raise ValueError(f"unknown gate {self.name!r}")
        arity = GATE_ARITY[self.name]
        if arity is not None and len(self.wires) != arity:
            raise ValueError(f"{self.name} acts on {arity} wire(s), got {self.wires}")
        if not self.wires or len(set(self.wires)) != len(self.wires):
            raise ValueError(f"{self.name} wires must be distinct, got {self.wires}")
        if any(wire < 0 for wire in self.wires):
            raise ValueError(f"negative wire in {self.wires}")
        if (self.angle is None) == (self.name in ROTATIONS):
            raise ValueError(f"{self.name} angle mismatch: {self.angle!r}")
        if self.name == "MCRY":
            if len(self.polarity) != len(self.wires) - 1:
                raise ValueError("MCRY needs one polarity bit per control")
            if any(bit not in (0, 1) for bit in self.polarity):
                raise ValueError(f"invalid MCRY polarity {self.polarity}")
        elif self.polarity:
            raise ValueError(f"{self.name} takes no control polarity")

    @property
    def controls(self) -> Tuple[int, ...]:
        return self.wires[:-1] if self.name == "MCRY" else ()

    @property
    def target(self) -> int:
        return self.wires[-1]


@dataclass(frozen=True)
class Circuit:
    """依套用順序排列的閘序列；label 為 "k=1" 或 "y=100"。"""

    num_qubits: int
    gates: Tuple[Gate, ...] = ()
    n: int = 0
    label: str = ""

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError(f"num_qubits must be positive, got {self.num_qubits}")
        for gate in self.gates:
            if max(gate.wires) >= self.num_qubits:
                raise ValueError(f"{gate.name} on wires {gate.wires} exceeds {self.num_qubits} qubits")

    def header(self) -> str:
        return f"n={self.n} {self.label}".strip()

    def with_gates(self, gates: Sequence[Gate]) -> "Circuit":
        return replace(self, gates=tuple(gates))

    def gate_count(self) -> int:
        return len(self.gates)

    def cnot_count(self) -> int:
        return sum(1 for gate in self.gates if gate.name == "CNOT")
