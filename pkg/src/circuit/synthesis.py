"""Circuit Synthesis Module - decoding rotation cascade and encoding ladder."""

from math import atan, sqrt
from typing import Dict, List, Sequence, Tuple

from ..core.codebook import (
    QracInstance,
    check_bits,
    bits_to_str,
    displacement,
    parity,
)
from ..core.constants import CONSTRUCTION_TOL
from ..core.decoder import WDecomposition, diagonal_word, w_decomposition
from ..core.errors import ConstructionError
from ..core.pauli import PauliString, PauliSum, multiply, rotate_conjugate
from .ir import Circuit, Gate, RotationStep

# 將 Pauli 軸轉到 Z 的基底變換，及其逆
_TO_Z: Dict[str, Tuple[str, ...]] = {"X": ("H",), "Y": ("SDG", "H"), "Z": ()}
_FROM_Z: Dict[str, Tuple[str, ...]] = {"X": ("H",), "Y": ("H", "S"), "Z": ()}


def _hermitian_product(first: PauliString, second: PauliString) -> PauliString:
    """i·first·second，兩字反對易時為 Hermitian。"""
    phase, word = multiply(first, second)
    exponent = (phase + 1) % 4
    if exponent % 2:
        raise ConstructionError(
            f"i·{first.label()}·{second.label()} is not Hermitian"
        )
    return PauliString(word.num_sites, word.x_mask, word.z_mask, 1 if exponent == 0 else -1)


def _rotation_plan(decomp: WDecomposition, n: int) -> List[RotationStep]:
    words = decomp.words
    k = decomp.k
    eps = 1.0 / sqrt(n * (n - 1))
    c_k = sqrt((n - 1) / n)
    steps: List[RotationStep] = []

    # 左收縮：W_m 的係數依序併入 W_{m+1}
    for m in range(1, k):
        generator = _hermitian_product(words[m], words[m - 1])
        angle = atan(sqrt(m)) if m < k - 1 else atan(sqrt(k - 1) * eps / c_k)
        steps.append(RotationStep(generator, angle, "left", m))

    # 右收縮：由 m = n-1 往下到 k
    left_mass = sqrt((k - 1) * eps * eps + c_k * c_k)
    for m in range(n - 1, k - 1, -1):
        generator = _hermitian_product(words[m - 1], words[m])
        angle = atan(sqrt(n - m)) if m > k else atan(sqrt(n - k) * eps / left_mass)
        steps.append(RotationStep(generator, angle, "right", m))
    return steps


def _expected_coefficient(step: RotationStep, k: int, n: int) -> Tuple[int, float]:
    """每一步之後被累積的字索引（1 起算）與其應有係數。"""
    eps = 1.0 / sqrt(n * (n - 1))
    c_k = sqrt((n - 1) / n)
    m = step.m
    if step.stage == "left":
        if m < k - 1:
            return m + 1, sqrt(m + 1) * eps
        return k, sqrt((k - 1) * eps * eps + c_k * c_k)
    if m > k:
        return m, sqrt(n - m + 1) * eps
    return k, 1.0


def contraction_trace(
    inst: QracInstance, k: int, steps: Sequence[RotationStep]
) -> List[PauliSum]:
    """
    逐步共軛 O_k，回傳每一步之後的 PauliSum。

    Args:
        inst: QRAC 實例
        k: 位元索引
        steps: 旋轉序列

    Returns:
        長度為 len(steps) + 1 的清單，首項為 O_k
    """
    current = w_decomposition(inst, k).to_pauli_sum()
    trace = [current]
    for step in steps:
        current = rotate_conjugate(current, step.generator, step.angle)
        trace.append(current)
    return trace


def diagonalization_rotations(inst: QracInstance, k: int) -> Tuple[RotationStep, ...]:
    """
    將 O_k 對角化為 E_k 的旋轉序列（套用順序）。

    左收縮 m = 1..k-1 遞增，之後右收縮 m = n-1..k 遞減；
    每一步都檢查被累積字的係數，最後檢查殘差。

    Args:
        inst: QRAC 實例
        k: 位元索引

    Returns:
        RotationStep 序列

    Raises:
        ConstructionError: 當任一步係數或最終殘差超過 1e-12 時
    """
    inst.check_index(k)
    decomp = w_decomposition(inst, k)
    steps = _rotation_plan(decomp, inst.n)

    current = decomp.to_pauli_sum()
    for step in steps:
        current = rotate_conjugate(current, step.generator, step.angle)
        index, expected = _expected_coefficient(step, k, inst.n)
        actual = current.coefficient_of(decomp.words[index - 1])
        if abs(actual - expected) >= CONSTRUCTION_TOL:
            raise ConstructionError(
                f"{step.stage} step m={step.m} left coefficient {actual!r} "
                f"on W_{index}, expected {expected!r}"
            )

    target = PauliSum.from_word(diagonal_word(inst, k))
    residual = current.residual(target)
    if residual >= CONSTRUCTION_TOL:
        raise ConstructionError(f"contraction residual {residual:.3e} for k={k}")
    return tuple(steps)


def _lower_step(step: RotationStep) -> List[Gate]:
    generator = step.generator
    support = generator.support()
    if generator.weight() > 2:
        raise ValueError(f"generator {generator.label()} has weight > 2")
    # 生成元的負號併入角度
    angle = generator.sign * step.angle
    if len(support) == 1:
        site = support[0]
        wire = site - 1
        letter = generator.letter(site)
        if letter == "Y":
            return [Gate("RY", (wire,), angle)]
        if letter == "Z":
            return [Gate("RZ", (wire,), angle)]
        return [Gate("H", (wire,)), Gate("RZ", (wire,), angle), Gate("H", (wire,))]

    first, second = support
    wire_a, wire_b = first - 1, second - 1
    gates: List[Gate] = []
    for site, wire in ((first, wire_a), (second, wire_b)):
        gates.extend(Gate(name, (wire,)) for name in _TO_Z[generator.letter(site)])
    gates.append(Gate("CNOT", (wire_a, wire_b)))
    gates.append(Gate("RZ", (wire_b,), angle))
    gates.append(Gate("CNOT", (wire_a, wire_b)))
    for site, wire in ((first, wire_a), (second, wire_b)):
        gates.extend(Gate(name, (wire,)) for name in _FROM_Z[generator.letter(site)])
    return gates


def lower_to_gates(
    steps: Sequence[RotationStep], n: int = 0, label: str = ""
) -> Circuit:
    """
    將旋轉序列降為標準閘。

    兩體旋轉：基底變換 → CNOT → RZ → CNOT → 逆基底變換；單體旋轉為單一軸旋轉。

    Args:
        steps: RotationStep 序列
        n: 電路標頭用的 n
        label: 電路標頭用的標籤

    Returns:
        Circuit

    Raises:
        ValueError: 當序列為空且無法推得量子位元數，或生成元權重 > 2 時
    """
    if not steps:
        if n < 2:
            raise ValueError("cannot infer the qubit count of an empty rotation list")
        return Circuit(n - 1, (), n, label)
    num_qubits = steps[0].generator.num_sites
    gates: List[Gate] = []
    for step in steps:
        gates.extend(_lower_step(step))
    return Circuit(num_qubits, tuple(gates), n, label)


def decoding_circuit(inst: QracInstance, k: int) -> Circuit:
    return lower_to_gates(diagonalization_rotations(inst, k), inst.n, f"k={k}")


def ladder_angles(inst: QracInstance) -> Tuple[float, ...]:
    """θ_k = 2·arctan(1/√(n-k))，k = 1..n-1。"""
    return tuple(2 * atan(1 / sqrt(inst.n - k)) for k in range(1, inst.n))


def encoding_circuit(y: Sequence[int], inst: QracInstance) -> Circuit:
    """
    由 |0…0⟩ 製備 |ψ_y⟩ 的電路（奇同位時差全域正負號 (-1)^{v·y}）。

    Args:
        y: 長度 n 的位元組
        inst: QRAC 實例

    Returns:
        Circuit：MCRY 階梯 + X(u) 層 + Z(v') 層；偶同位只有 X 層
    """
    bits = inst.check_bits(y)
    label = f"y={bits_to_str(bits)}"
    gates: List[Gate] = []
    if parity(bits) == 0:
        gates.extend(Gate("X", (wire,)) for wire in range(inst.m) if bits[wire])
        return Circuit(inst.m, tuple(gates), inst.n, label)

    for k, theta in enumerate(ladder_angles(inst), start=1):
        controls = tuple(range(k - 1))
        gates.append(Gate("MCRY", controls + (k - 1,), theta, (0,) * len(controls)))
    data = displacement(bits)
    gates.extend(Gate("X", (wire,)) for wire in range(inst.m) if data.u[wire])
    gates.extend(Gate("Z", (wire,)) for wire in range(inst.m) if data.v_prime[wire])
    return Circuit(inst.m, tuple(gates), inst.n, label)


def encoding_sign(y: Sequence[int]) -> int:
    """encoding_circuit 輸出與 encode(y) 之間的全域正負號。"""
    bits = check_bits(y)
    return 1 if parity(bits) == 0 else displacement(bits).global_sign


def _multiplexed_ry(
    controls: Tuple[int, ...], target: int, angles: Sequence[float]
) -> List[Gate]:
    # angles 依控制位元樣式索引，controls[0] 為最高位
    if not controls:
        return [Gate("RY", (target,), angles[0])] if angles[0] != 0.0 else []
    half = len(angles) // 2
    low, high = angles[:half], angles[half:]
    plus = [(a + b) / 2 for a, b in zip(low, high)]
    minus = [(a - b) / 2 for a, b in zip(low, high)]
    rest = controls[1:]
    flip = Gate("CNOT", (controls[0], target))
    return (
        _multiplexed_ry(rest, target, plus)
        + [flip]
        + _multiplexed_ry(rest, target, minus)
        + [flip]
    )


def expand_mcry(circuit: Circuit) -> Circuit:
    """
    將 MCRY 展開為 X、CNOT 與 RY（不使用輔助位元）。

    零極性的控制位元以 X 共軛，之後以均勻控制 RY 的遞迴拆解。
    """
    gates: List[Gate] = []
    for gate in circuit.gates:
        if gate.name != "MCRY":
            gates.append(gate)
            continue
        flips = [
            Gate("X", (wire,))
            for wire, bit in zip(gate.controls, gate.polarity)
            if bit == 0
        ]
        angles = [0.0] * ((1 << len(gate.controls)) - 1) + [gate.angle]
        gates.extend(flips)
        gates.extend(_multiplexed_ry(gate.controls, gate.target, angles))
        gates.extend(flips)
    return circuit.with_gates(gates)
