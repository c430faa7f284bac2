"""The full mean-estimation circuit, its analytic stage states, and estimators.

Pipeline: Hadamards put the index register in uniform superposition, the
oracle loads every value onto the data qubit, a second Hadamard layer
interferes the branches, a multi-controlled X copies the data amplitude that
sits on the all-zero index branch onto the mean qubit, and a final Hadamard
layer spreads it.  P(mean qubit = 1) of the final state equals the square of
the mean of f, so sqrt(p1) estimates |mu|.

Five stage names mark the state after each layer: ``superposition``,
``encoding``, ``interference``, ``extraction``, ``output``.  For each stage
``expected_checkpoint`` computes the state straight from f(x) with dense
textbook formulas (no gate kernels), giving an independent oracle for the
simulator.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .encoding import Dataset, build_qram_oracle, rescale
from .errors import CapacityError
from .statevector import (
    CLOSED,
    MAX_QUBITS_DEFAULT,
    OPEN,
    Circuit,
    QubitLayout,
    StateVector,
    apply_circuit,
    hadamard,
    new_ground_state,
    pauli_x,
    probability_of_bit,
    sample_bit,
)

STAGES = ("superposition", "encoding", "interference", "extraction", "output")

# Dense analytic checkpoints build an N x N sign matrix; 2^11 keeps that small.
_MAX_CHECKPOINT_INDEX_QUBITS = 11


@dataclass
class MeanEstimate:
    """Result of one run: shot counts, p1, |mu| estimate, optional signed mean.

    ``shots == 0`` marks exact mode, where ``p1`` is the ideal probability.
    """

    shots: int
    ones_count: int
    p1: float
    magnitude: float
    classical_mean: float
    epsilon: float
    signed_mean: float | None = None


@dataclass(frozen=True, eq=False)
class CheckpointState:
    """Analytically expected amplitudes at one named stage."""

    stage: str
    amps: np.ndarray


def build_mean_circuit(dataset: Dataset) -> Circuit:
    """Assemble the full circuit with a checkpoint marker after every stage."""
    layout = QubitLayout(dataset.n_index)
    ops = []
    checkpoints = {}

    for q in layout.index_qubits:
        ops.append(hadamard(q))
    checkpoints["superposition"] = len(ops)

    ops.extend(build_qram_oracle(dataset, layout).ops)
    checkpoints["encoding"] = len(ops)

    for q in layout.index_qubits:
        ops.append(hadamard(q))
    checkpoints["interference"] = len(ops)

    controls = tuple((q, OPEN) for q in layout.index_qubits) + ((layout.data_pos, CLOSED),)
    ops.append(pauli_x(layout.mean_pos, controls))
    checkpoints["extraction"] = len(ops)

    for q in layout.index_qubits:
        ops.append(hadamard(q))
    checkpoints["output"] = len(ops)

    return Circuit(layout=layout, ops=ops, checkpoints=checkpoints)


def _bit_parity(a: np.ndarray) -> np.ndarray:
    v = a.copy()
    for shift in (16, 8, 4, 2, 1):
        v ^= v >> shift
    return v & 1


def _sign_matrix(n_index: int) -> np.ndarray:
    """N x N matrix of (-1)**(x . y) bitwise-dot phases."""
    x = np.arange(1 << n_index, dtype=np.int64)
    return 1.0 - 2.0 * _bit_parity(x[:, None] & x[None, :])


def expected_checkpoint(dataset: Dataset, stage: str) -> CheckpointState:
    """Expected state at ``stage``, computed directly from f(x).

    Uses explicit superposition/interference formulas and a dense sign matrix,
    deliberately sharing no code with the gate simulator.
    """
    if stage not in STAGES:
        raise ValueError(f"unknown stage {stage!r}; expected one of {STAGES}")
    n = dataset.n_index
    if n > _MAX_CHECKPOINT_INDEX_QUBITS:
        raise CapacityError(
            f"analytic checkpoints are limited to {_MAX_CHECKPOINT_INDEX_QUBITS} index qubits"
        )
    size = 1 << n
    root_n = math.sqrt(size)
    f = dataset.f
    cos_part = np.sqrt(np.maximum(1.0 - f * f, 0.0))

    # amps[mean, data, index]
    amps = np.zeros((2, 2, size), dtype=np.complex128)
    if stage == "superposition":
        amps[0, 0, :] = 1.0 / root_n
        return CheckpointState(stage, amps.reshape(-1))
    if stage == "encoding":
        amps[0, 0, :] = cos_part / root_n
        amps[0, 1, :] = f / root_n
        return CheckpointState(stage, amps.reshape(-1))

    signs = _sign_matrix(n)
    amps[0, 0, :] = signs @ cos_part / size
    amps[0, 1, :] = signs @ f / size
    if stage == "interference":
        return CheckpointState(stage, amps.reshape(-1))

    amps[1, 1, 0] = amps[0, 1, 0]
    amps[0, 1, 0] = 0.0
    if stage == "extraction":
        return CheckpointState(stage, amps.reshape(-1))

    for m in (0, 1):
        for d in (0, 1):
            amps[m, d, :] = signs @ amps[m, d, :] / root_n
    return CheckpointState(stage, amps.reshape(-1))


def run_circuit(
    dataset: Dataset, *, max_qubits: int = MAX_QUBITS_DEFAULT
) -> tuple[StateVector, QubitLayout]:
    """Simulate the full circuit from the ground state."""
    circuit = build_mean_circuit(dataset)
    state = new_ground_state(circuit.layout, max_qubits=max_qubits)
    return apply_circuit(state, circuit), circuit.layout


def exact_probability(dataset: Dataset, *, max_qubits: int = MAX_QUBITS_DEFAULT) -> float:
    """P(mean qubit = 1) of the ideal final state; equals classical_mean**2."""
    final, layout = run_circuit(dataset, max_qubits=max_qubits)
    return probability_of_bit(final, layout.mean_pos, 1)


def classical_mean(dataset: Dataset) -> float:
    """Arithmetic mean of f over the padded length N; the ground-truth oracle."""
    return float(dataset.f.mean())


def estimate_mean(dataset: Dataset, shots: int, seed: int) -> MeanEstimate:
    """Simulate once, sample the mean qubit ``shots`` times, report sqrt(p1)."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    final, layout = run_circuit(dataset)
    ones = sample_bit(final, layout.mean_pos, shots, seed)
    p1 = ones / shots
    magnitude = math.sqrt(p1)
    truth = classical_mean(dataset)
    return MeanEstimate(
        shots=shots,
        ones_count=ones,
        p1=p1,
        magnitude=magnitude,
        classical_mean=truth,
        epsilon=abs(magnitude - abs(truth)),
    )


def exact_estimate(dataset: Dataset) -> MeanEstimate:
    """Exact-mode counterpart of ``estimate_mean`` (shots = 0)."""
    p1 = exact_probability(dataset)
    magnitude = math.sqrt(p1)
    truth = classical_mean(dataset)
    return MeanEstimate(
        shots=0,
        ones_count=0,
        p1=p1,
        magnitude=magnitude,
        classical_mean=truth,
        epsilon=abs(magnitude - abs(truth)),
    )


def shift_to_unit_interval(dataset: Dataset) -> Dataset:
    """Dataset holding g = (f + 1) / 2 over all padded entries.

    Every g(x) lies in [0, 1], so the shifted mean is non-negative and
    sqrt(p1) recovers it exactly; 2 * mean_g - 1 restores the signed mean.
    """
    return rescale((dataset.f + 1.0) / 2.0)


def resolve_sign(dataset: Dataset, shots: int, seed: int) -> float:
    """Signed mean via one extra sampled run on the shifted dataset."""
    shifted = estimate_mean(shift_to_unit_interval(dataset), shots, seed)
    return 2.0 * shifted.magnitude - 1.0


def exact_signed_mean(dataset: Dataset) -> float:
    """Signed mean from the ideal distribution of the shifted dataset."""
    return 2.0 * math.sqrt(exact_probability(shift_to_unit_interval(dataset))) - 1.0
