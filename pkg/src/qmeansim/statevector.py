"""Dense state-vector simulation of the {H, X, RY} gate set with controls.

Basis-state integers decompose as ``b = (mean_bit << (n+1)) | (data_bit << n) | x``:
the index register lives in the least-significant bits, the data qubit at
position ``n``, the mean qubit at position ``n + 1``.  Amplitudes are
``complex128``; every tolerance in the test suite assumes double precision.

All public operations either return a fresh state or mutate a state they
exclusively own, so values are immutable from the caller's perspective and
safe to share across threads for reading.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError

OPEN = "open"
CLOSED = "closed"

# Default cap on total qubits; 24 qubits = 16M complex amplitudes = 256 MB.
MAX_QUBITS_DEFAULT = 24

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class QubitLayout:
    """Register layout: ``n_index`` index qubits, then one data and one mean qubit."""

    n_index: int

    def __post_init__(self) -> None:
        if self.n_index < 0:
            raise ValueError(f"n_index must be >= 0, got {self.n_index}")

    @property
    def data_pos(self) -> int:
        return self.n_index

    @property
    def mean_pos(self) -> int:
        return self.n_index + 1

    @property
    def num_qubits(self) -> int:
        return self.n_index + 2

    @property
    def index_qubits(self) -> tuple[int, ...]:
        return tuple(range(self.n_index))


@dataclass(frozen=True)
class GateOp:
    """One gate: ``kind`` in {"h", "x", "ry"} with polarity-tagged controls.

    An ``open`` control fires on |0>, a ``closed`` control on |1>.
    """

    kind: str
    target: int
    theta: float = 0.0
    controls: tuple[tuple[int, str], ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in ("h", "x", "ry"):
            raise ValueError(f"unknown gate kind {self.kind!r}")
        positions = [q for q, _ in self.controls]
        if self.target in positions:
            raise ValueError("target qubit cannot also be a control")
        if len(set(positions)) != len(positions):
            raise ValueError("control positions must be pairwise distinct")
        for _, pol in self.controls:
            if pol not in (OPEN, CLOSED):
                raise ValueError(f"control polarity must be 'open' or 'closed', got {pol!r}")


def hadamard(target: int, controls: tuple[tuple[int, str], ...] = ()) -> GateOp:
    return GateOp("h", target, controls=controls)


def pauli_x(target: int, controls: tuple[tuple[int, str], ...] = ()) -> GateOp:
    return GateOp("x", target, controls=controls)


def rot_y(theta: float, target: int, controls: tuple[tuple[int, str], ...] = ()) -> GateOp:
    return GateOp("ry", target, theta=float(theta), controls=controls)


@dataclass(frozen=True)
class MultiplexedRotY:
    """A uniformly controlled RY: rotation angle selected by the index register.

    ``angles[x]`` is applied to ``target`` when the ``select`` qubits hold the
    binary value ``x`` (``select[j]`` carries bit ``j``).  The simulator applies
    the whole family in one fused pass over the amplitude array; ``expand``
    gives the equivalent list of individually controlled rotations.
    """

    angles: tuple[float, ...]
    select: tuple[int, ...]
    target: int

    def __post_init__(self) -> None:
        if len(self.angles) != 1 << len(self.select):
            raise ValueError("need exactly 2**len(select) angles")
        if self.target in self.select:
            raise ValueError("target qubit cannot also be a select qubit")

    def expand(self) -> list[GateOp]:
        """Per-pattern controlled rotations, equivalent to the fused pass."""
        ops = []
        for x, theta in enumerate(self.angles):
            controls = tuple(
                (q, CLOSED if (x >> j) & 1 else OPEN) for j, q in enumerate(self.select)
            )
            ops.append(rot_y(theta, self.target, controls))
        return ops


CircuitOp = GateOp | MultiplexedRotY


@dataclass
class Circuit:
    """Ordered gate list over a layout, with optional named stage markers.

    ``checkpoints`` maps a stage name to the number of leading ops after which
    the stage's state is defined (used by snapshot capture).
    """

    layout: QubitLayout
    ops: list[CircuitOp] = field(default_factory=list)
    checkpoints: dict[str, int] = field(default_factory=dict)


@dataclass
class StateVector:
    """Dense amplitudes over ``2**num_qubits`` basis states."""

    num_qubits: int
    amps: np.ndarray

    def copy(self) -> "StateVector":
        return StateVector(self.num_qubits, self.amps.copy())

    def norm_squared(self) -> float:
        a = self.amps
        return float(np.sum(a.real * a.real + a.imag * a.imag))


def new_ground_state(layout: QubitLayout, *, max_qubits: int = MAX_QUBITS_DEFAULT) -> StateVector:
    """Allocate |0...0> over the layout's qubits.

    Raises CapacityError when ``n_index`` is zero (the circuit needs at least
    one index qubit) or the total qubit count exceeds ``max_qubits``.
    """
    if layout.n_index < 1:
        raise CapacityError("need at least one index qubit")
    if layout.num_qubits > max_qubits:
        raise CapacityError(
            f"{layout.num_qubits} qubits exceeds the configured cap of {max_qubits}"
        )
    amps = np.zeros(1 << layout.num_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(layout.num_qubits, amps)


def _gate_matrix(op: GateOp) -> np.ndarray:
    if op.kind == "h":
        return np.array([[_INV_SQRT2, _INV_SQRT2], [_INV_SQRT2, -_INV_SQRT2]])
    if op.kind == "x":
        return np.array([[0.0, 1.0], [1.0, 0.0]])
    half = 0.5 * op.theta
    c, s = math.cos(half), math.sin(half)
    return np.array([[c, -s], [s, c]])


def _check_positions(op: GateOp, num_qubits: int) -> None:
    positions = [op.target] + [q for q, _ in op.controls]
    for q in positions:
        if not 0 <= q < num_qubits:
            raise ValueError(f"qubit {q} out of range for {num_qubits}-qubit state")


def _controlled_pair_indices(op: GateOp, num_qubits: int) -> tuple[np.ndarray, np.ndarray]:
    """Indices (target bit 0, target bit 1) of amplitude pairs the gate touches."""
    base = 0
    control_positions = set()
    for q, pol in op.controls:
        control_positions.add(q)
        if pol == CLOSED:
            base |= 1 << q
    idx = np.array([base], dtype=np.intp)
    for q in range(num_qubits):
        if q != op.target and q not in control_positions:
            idx = np.concatenate([idx, idx | (1 << q)])
    return idx, idx | (1 << op.target)


def _apply_gate_inplace(amps: np.ndarray, num_qubits: int, op: GateOp) -> None:
    _check_positions(op, num_qubits)
    m = _gate_matrix(op)
    if not op.controls:
        # Contiguous fast path: axis 1 of the reshape is the target bit.
        view = amps.reshape(1 << (num_qubits - 1 - op.target), 2, 1 << op.target)
        a = view[:, 0, :].copy()
        b = view[:, 1, :]
        view[:, 0, :] = m[0, 0] * a + m[0, 1] * b
        view[:, 1, :] = m[1, 0] * a + m[1, 1] * b
        return
    idx0, idx1 = _controlled_pair_indices(op, num_qubits)
    a = amps[idx0]
    b = amps[idx1]
    amps[idx0] = m[0, 0] * a + m[0, 1] * b
    amps[idx1] = m[1, 0] * a + m[1, 1] * b


def _apply_multiplexed_inplace(amps: np.ndarray, num_qubits: int, op: MultiplexedRotY) -> None:
    """One fused pass over the amplitude array; O(2**num_qubits) regardless of fan-out.

    Requires the standard layout (select register in the low bits, target just
    above); the expanded form covers arbitrary placements.
    """
    n = len(op.select)
    if op.select != tuple(range(n)) or op.target != n:
        raise ValueError("fused multiplexer requires select qubits 0..n-1 and target n")
    if num_qubits < n + 1:
        raise ValueError("state too small for this multiplexer")
    half = 0.5 * np.asarray(op.angles, dtype=np.float64)
    c = np.cos(half)
    s = np.sin(half)
    view = amps.reshape(-1, 2, 1 << n)
    a = view[:, 0, :].copy()
    b = view[:, 1, :]
    view[:, 0, :] = c * a - s * b
    view[:, 1, :] = s * a + c * b


def apply_gate(state: StateVector, op: GateOp) -> StateVector:
    """Return a new state with ``op`` applied; the input is left untouched."""
    out = state.copy()
    _apply_gate_inplace(out.amps, out.num_qubits, op)
    return out


def _apply_op_inplace(amps: np.ndarray, num_qubits: int, op: CircuitOp) -> None:
    if isinstance(op, MultiplexedRotY):
        _apply_multiplexed_inplace(amps, num_qubits, op)
    else:
        _apply_gate_inplace(amps, num_qubits, op)


def apply_circuit(state: StateVector, circuit: Circuit) -> StateVector:
    """Apply all ops in order to a copy of ``state``."""
    if circuit.layout.num_qubits != state.num_qubits:
        raise ValueError("circuit layout does not match state size")
    out = state.copy()
    for op in circuit.ops:
        _apply_op_inplace(out.amps, out.num_qubits, op)
    return out


def apply_circuit_with_snapshots(
    state: StateVector, circuit: Circuit
) -> tuple[StateVector, dict[str, StateVector]]:
    """Like ``apply_circuit`` but also captures a copy at every checkpoint marker."""
    if circuit.layout.num_qubits != state.num_qubits:
        raise ValueError("circuit layout does not match state size")
    boundaries: dict[int, list[str]] = {}
    for name, count in circuit.checkpoints.items():
        boundaries.setdefault(count, []).append(name)
    out = state.copy()
    snapshots: dict[str, StateVector] = {}

    def capture(done: int) -> None:
        for name in boundaries.get(done, ()):
            snapshots[name] = out.copy()

    capture(0)
    for i, op in enumerate(circuit.ops):
        _apply_op_inplace(out.amps, out.num_qubits, op)
        capture(i + 1)
    return out, snapshots


def probability_of_bit(state: StateVector, qubit: int, value: int) -> float:
    """Probability of measuring ``qubit`` in |value>; clipped into [0, 1]."""
    if not 0 <= qubit < state.num_qubits:
        raise ValueError(f"qubit {qubit} out of range for {state.num_qubits}-qubit state")
    if value not in (0, 1):
        raise ValueError("bit value must be 0 or 1")
    view = state.amps.reshape(-1, 2, 1 << qubit)[:, value, :]
    p = float(np.sum(view.real * view.real + view.imag * view.imag))
    return min(max(p, 0.0), 1.0)


def sample_bit(state: StateVector, qubit: int, shots: int, seed: int) -> int:
    """Count of |1> outcomes over ``shots`` measurements of ``qubit``.

    Draws once from Binomial(shots, p1) with numpy's PCG64 generator, so the
    result is a pure function of (state, qubit, shots, seed).
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    p1 = probability_of_bit(state, qubit, 1)
    rng = np.random.default_rng(seed)
    return int(rng.binomial(shots, p1))
