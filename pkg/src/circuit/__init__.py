"""Circuit synthesis, simulation and export."""

from .export import parse_native, to_native, to_qasm
from .ir import Circuit, Gate, RotationStep
from .simulator import circuit_to_unitary, gate_matrix, run_statevector
from .synthesis import (
    contraction_trace,
    decoding_circuit,
    diagonalization_rotations,
    encoding_circuit,
    encoding_sign,
    expand_mcry,
    ladder_angles,
    lower_to_gates,
)

__all__ = [
    "parse_native",
    "to_native",
    "to_qasm",
    "Circuit",
    "Gate",
    "RotationStep",
    "circuit_to_unitary",
    "gate_matrix",
    "run_statevector",
    "contraction_trace",
    "decoding_circuit",
    "diagonalization_rotations",
    "encoding_circuit",
    "encoding_sign",
    "expand_mcry",
    "ladder_angles",
    "lower_to_gates",
]
