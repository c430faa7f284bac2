"""OpenQASM 2.0 serialization of built circuits.

Every circuit op is first lowered to the elementary set {h, x, cx, ccx, ry,
cry}; the text emitter then maps those one-to-one onto QASM statements, so the
emitted gate count equals the decomposed gate count.  Rotation angles are
printed as shortest round-trip decimal literals (>= 15 significant digits).

Multiplexed and multi-controlled rotations lower to the Gray-code ladder of
alternating ry/cx gates, which is exact for every input state.  A multi-
controlled X with three or more controls lowers to the same ladder with a
lone pi rotation; that form agrees with X whenever the target qubit enters in
|0> (true for the mean qubit in every circuit the builders produce, which
start from the ground state) and is the only ancilla-free option inside the
phase-free elementary set.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ExportError
from .statevector import (
    CLOSED,
    OPEN,
    Circuit,
    CircuitOp,
    GateOp,
    MultiplexedRotY,
    pauli_x,
    rot_y,
)


def _walsh_transform(values: np.ndarray) -> np.ndarray:
    """In-place-style fast Walsh-Hadamard butterfly (unnormalized)."""
    out = np.asarray(values, dtype=np.float64).copy()
    h = 1
    while h < out.size:
        for start in range(0, out.size, 2 * h):
            a = out[start : start + h].copy()
            b = out[start + h : start + 2 * h]
            out[start : start + h] = a + b
            out[start + h : start + 2 * h] = a - b
        h *= 2
    return out


def _gray(i: int) -> int:
    return i ^ (i >> 1)


def _ucry_ladder(angles: np.ndarray, select: tuple[int, ...], target: int) -> list[GateOp]:
    """Gray-code ry/cx ladder applying RY(angles[x]) for select pattern x."""
    k = len(select)
    count = 1 << k
    transformed = _walsh_transform(angles) / count
    ops: list[GateOp] = []
    for i in range(count):
        ops.append(rot_y(float(transformed[_gray(i)]), target))
        step = i + 1
        flip_bit = (step & -step).bit_length() - 1 if step < count else k - 1
        ops.append(pauli_x(target, ((select[flip_bit], CLOSED),)))
    return ops


def _one_hot_angles(controls: tuple[tuple[int, str], ...], theta: float) -> np.ndarray:
    fire = 0
    for j, (_, pol) in enumerate(controls):
        if pol == CLOSED:
            fire |= 1 << j
    angles = np.zeros(1 << len(controls))
    angles[fire] = theta
    return angles


def _x_wrapped(core: list[GateOp], open_controls: list[int]) -> list[GateOp]:
    wraps = [pauli_x(q) for q in open_controls]
    return wraps + core + wraps


def _lower_gate(op: GateOp) -> list[GateOp]:
    k = len(op.controls)
    if op.kind == "h":
        if k:
            raise ExportError("controlled Hadamard has no expansion in the elementary set")
        return [op]
    open_controls = [q for q, pol in op.controls if pol == OPEN]
    closed_only = tuple((q, CLOSED) for q, _ in op.controls)
    if op.kind == "x":
        if k <= 2:
            return _x_wrapped([pauli_x(op.target, closed_only)], open_controls)
        return _ucry_ladder(
            _one_hot_angles(op.controls, math.pi),
            tuple(q for q, _ in op.controls),
            op.target,
        )
    # ry
    if k == 0:
        return [op]
    if k == 1:
        return _x_wrapped([rot_y(op.theta, op.target, closed_only)], open_controls)
    return _ucry_ladder(
        _one_hot_angles(op.controls, op.theta),
        tuple(q for q, _ in op.controls),
        op.target,
    )


def _lower_op(op: CircuitOp) -> list[GateOp]:
    if isinstance(op, MultiplexedRotY):
        if not op.select:
            return [rot_y(op.angles[0], op.target)]
        return _ucry_ladder(np.asarray(op.angles), op.select, op.target)
    return _lower_gate(op)


def decompose_circuit(circuit: Circuit) -> list[GateOp]:
    """Flatten a circuit into the elementary gate list the emitter prints."""
    ops: list[GateOp] = []
    for op in circuit.ops:
        ops.extend(_lower_op(op))
    return ops


def _statement(op: GateOp) -> str:
    closed = [q for q, pol in op.controls if pol == CLOSED]
    if any(pol == OPEN for _, pol in op.controls):
        raise ExportError("open controls must be lowered before emission")
    if op.kind == "h" and not closed:
        return f"h q[{op.target}];"
    if op.kind == "x":
        if not closed:
            return f"x q[{op.target}];"
        if len(closed) == 1:
            return f"cx q[{closed[0]}],q[{op.target}];"
        if len(closed) == 2:
            return f"ccx q[{closed[0]}],q[{closed[1]}],q[{op.target}];"
    if op.kind == "ry":
        angle = repr(float(op.theta))
        if not closed:
            return f"ry({angle}) q[{op.target}];"
        if len(closed) == 1:
            return f"cry({angle}) q[{closed[0]}],q[{op.target}];"
    raise ExportError(f"gate {op.kind!r} with {len(op.controls)} controls is not elementary")


@dataclass(frozen=True)
class QasmDocument:
    """An OpenQASM 2.0 program: header, declarations, gate body, measurement."""

    header: tuple[str, ...]
    declarations: tuple[str, ...]
    body: tuple[str, ...]
    measurement: str

    @property
    def gate_count(self) -> int:
        return len(self.body)

    @property
    def text(self) -> str:
        lines = (*self.header, *self.declarations, *self.body, self.measurement)
        return "\n".join(lines) + "\n"


def export_qasm(circuit: Circuit) -> QasmDocument:
    """Serialize a circuit; the single classical bit records the mean qubit."""
    layout = circuit.layout
    body = tuple(_statement(op) for op in decompose_circuit(circuit))
    return QasmDocument(
        header=("OPENQASM 2.0;", 'include "qelib1.inc";'),
        declarations=(f"qreg q[{layout.num_qubits}];", "creg c[1];"),
        body=body,
        measurement=f"measure q[{layout.mean_pos}] -> c[0];",
    )
