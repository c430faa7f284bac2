"""Rescaling of raw inputs into [-1, 1] and the amplitude-encoding oracle.

A value v is held by the data qubit as sqrt(1 - v^2)|0> + v|1>; the |0>
amplitude is always the non-negative root, so negative values show up as a
negative |1> amplitude.  The oracle realizing the map |x>|0> -> |x>|f(x)> is a
multiplexed RY over the index register.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError
from .statevector import (
    Circuit,
    MultiplexedRotY,
    QubitLayout,
    StateVector,
    apply_circuit,
    new_ground_state,
)


@dataclass(frozen=True, eq=False)
class Dataset:
    """Raw input values plus their rescaled, zero-padded form.

    ``raw[i] == scale * f[i]`` for the original entries; the last ``pad_count``
    entries of ``f`` are the zeros added to reach the next power of two.
    """

    raw: tuple[float, ...]
    f: np.ndarray
    scale: float
    n_index: int
    pad_count: int

    @property
    def size(self) -> int:
        """Padded length N = 2**n_index."""
        return len(self.f)


@dataclass(frozen=True, eq=False)
class EncodedAngles:
    """Rotation angles theta[x] = 2*arcsin(f[x]), in [-pi, pi]."""

    theta: np.ndarray


def rescale(raw) -> Dataset:
    """Divide by max(|raw|) when it exceeds 1, then zero-pad to a power of two."""
    values = np.asarray(list(raw), dtype=np.float64)
    if values.size == 0:
        raise ValueError("input must contain at least one value")
    if not np.all(np.isfinite(values)):
        raise ValueError("input values must all be finite")
    peak = float(np.max(np.abs(values)))
    scale = peak if peak > 1.0 else 1.0
    f = values / scale
    n_index = int(values.size - 1).bit_length() if values.size > 1 else 0
    padded = 1 << n_index
    pad_count = padded - values.size
    if pad_count:
        f = np.concatenate([f, np.zeros(pad_count)])
    return Dataset(
        raw=tuple(float(v) for v in values),
        f=f,
        scale=scale,
        n_index=n_index,
        pad_count=pad_count,
    )


def angles_of(dataset: Dataset) -> EncodedAngles:
    """Encoding angles so that RY(theta)|0> = sqrt(1-f^2)|0> + f|1>."""
    return EncodedAngles(theta=2.0 * np.arcsin(dataset.f))


def build_qram_oracle(dataset: Dataset, layout: QubitLayout) -> Circuit:
    """Circuit fragment mapping sum_x a_x|x>|0> to sum_x a_x|x>|f(x)>.

    Logically one controlled rotation per index value; the simulator applies
    it as a single fused pass.  The black-box memory model this stands in for
    answers in O(1) queries; simulating it costs O(N) rotations (or the one
    fused pass) per application.
    """
    if layout.n_index != dataset.n_index:
        raise ValueError(
            f"layout has {layout.n_index} index qubits but dataset needs {dataset.n_index}"
        )
    theta = angles_of(dataset).theta
    op = MultiplexedRotY(
        angles=tuple(float(t) for t in theta),
        select=layout.index_qubits,
        target=layout.data_pos,
    )
    return Circuit(layout=layout, ops=[op])


def expanded_qram_oracle(dataset: Dataset, layout: QubitLayout) -> Circuit:
    """The oracle as explicit per-index controlled rotations (slow, for checks)."""
    fused = build_qram_oracle(dataset, layout)
    ops = []
    for op in fused.ops:
        ops.extend(op.expand())
    return Circuit(layout=layout, ops=ops)


def oracle_unitarity_check(dataset: Dataset, *, atol: float = 1e-10) -> bool:
    """Materialize the oracle fragment column by column and test U^dag U = I."""
    layout = QubitLayout(dataset.n_index)
    if layout.num_qubits > 10:
        raise CapacityError("unitarity check is limited to 10 total qubits")
    fragment = build_qram_oracle(dataset, layout)
    dim = 1 << layout.num_qubits
    u = np.zeros((dim, dim), dtype=np.complex128)
    basis = new_ground_state(layout)
    for col in range(dim):
        basis.amps[:] = 0.0
        basis.amps[col] = 1.0
        u[:, col] = apply_circuit(basis, fragment).amps
    product = u.conj().T @ u
    return bool(np.max(np.abs(product - np.eye(dim))) <= atol)


def encoded_pair(value: float) -> tuple[float, float]:
    """(|0> amplitude, |1> amplitude) of a single encoded value."""
    return math.sqrt(max(1.0 - value * value, 0.0)), value
