"""Statevector Simulator Module - dense unitaries of small circuits."""

from math import cos, sin
from typing import Optional

import numpy as np

from ..config import Config
from ..core.constants import UNITARY_TOL
from ..core.dense import DenseOperator, StateVector, basis_state
from ..core.errors import ConstructionError, DimensionLimitError
from .ir import Circuit, Gate
from .synthesis import expand_mcry

_SQRT_HALF = 1 / np.sqrt(2)
_FIXED = {
    "H": np.array([[_SQRT_HALF, _SQRT_HALF], [_SQRT_HALF, -_SQRT_HALF]], dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
    "S": np.array([[1, 0], [0, 1j]], dtype=np.complex128),
    "SDG": np.array([[1, 0], [0, -1j]], dtype=np.complex128),
    "CNOT": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.complex128
    ),
}


def _ry(theta: float) -> np.ndarray:
    c, s = cos(theta / 2), sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def _rz(theta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def gate_matrix(gate: Gate) -> np.ndarray:
    """
    閘在其自身線上的矩陣；wires[0] 為最高位。

    MCRY 在控制樣式等於 polarity 時對目標施加 RY，其餘為單位元。
    """
    if gate.name in _FIXED:
        return _FIXED[gate.name]
    if gate.name == "RY":
        return _ry(gate.angle)
    if gate.name == "RZ":
        return _rz(gate.angle)
    size = 1 << len(gate.wires)
    matrix = np.eye(size, dtype=np.complex128)
    row = 0
    for bit in gate.polarity:
        row = (row << 1) | bit
    row <<= 1
    matrix[row:row + 2, row:row + 2] = _ry(gate.angle)
    return matrix


def _apply(tensor: np.ndarray, gate: Gate, num_qubits: int) -> np.ndarray:
    # tensor 形狀為 (2,)*num_qubits + (columns,)
    arity = len(gate.wires)
    matrix = gate_matrix(gate).reshape((2,) * (2 * arity))
    moved = np.tensordot(matrix, tensor, axes=(list(range(arity, 2 * arity)), list(gate.wires)))
    return np.moveaxis(moved, list(range(arity)), list(gate.wires))


def _check_size(circuit: Circuit):
    if circuit.num_qubits > Config.DENSE_LIMIT:
        raise DimensionLimitError(
            f"{circuit.num_qubits} qubits exceed the dense limit of {Config.DENSE_LIMIT}"
        )


def _evolve(circuit: Circuit, columns: np.ndarray) -> np.ndarray:
    num_qubits = circuit.num_qubits
    width = columns.shape[1]
    tensor = columns.reshape((2,) * num_qubits + (width,))
    for gate in circuit.gates:
        tensor = _apply(tensor, gate, num_qubits)
    return tensor.reshape(1 << num_qubits, width)


def run_statevector(circuit: Circuit, state: Optional[np.ndarray] = None) -> StateVector:
    """
    模擬電路作用在 |0…0⟩（或指定狀態）上。

    Args:
        circuit: 電路（可含 MCRY）
        state: 初始狀態，預設 |0…0⟩

    Returns:
        輸出狀態向量
    """
    _check_size(circuit)
    dim = 1 << circuit.num_qubits
    initial = basis_state(0, dim) if state is None else np.asarray(state, dtype=np.complex128)
    if initial.shape != (dim,):
        raise ValueError(f"state of shape {initial.shape} does not match {circuit.num_qubits} qubits")
    return _evolve(circuit, initial.reshape(dim, 1))[:, 0]


def circuit_to_unitary(circuit: Circuit, expand: bool = True) -> DenseOperator:
    """
    依套用順序相乘得到電路的么正矩陣。

    Args:
        circuit: 電路
        expand: 是否先展開 MCRY（False 時以 MCRY 原生矩陣計算）

    Returns:
        2^q × 2^q 么正矩陣

    Raises:
        DimensionLimitError: 當量子位元數超過稠密上限時
        ConstructionError: 當結果偏離么正超過 1e-10 時
    """
    _check_size(circuit)
    if expand:
        circuit = expand_mcry(circuit)
    dim = 1 << circuit.num_qubits
    unitary = _evolve(circuit, np.eye(dim, dtype=np.complex128))
    drift = float(np.max(np.abs(unitary.conj().T @ unitary - np.eye(dim))))
    if drift >= UNITARY_TOL:
        raise ConstructionError(f"circuit unitary drifts from unitarity by {drift:.3e}")
    return unitary
