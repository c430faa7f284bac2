"""qmeansim: state-vector simulation of a quantum mean-estimation circuit."""

from .encoding import (
    Dataset,
    EncodedAngles,
    angles_of,
    build_qram_oracle,
    encoded_pair,
    expanded_qram_oracle,
    oracle_unitarity_check,
    rescale,
)
from .errors import CapacityError, ExportError
from .mean_circuit import (
    STAGES,
    CheckpointState,
    MeanEstimate,
    build_mean_circuit,
    classical_mean,
    estimate_mean,
    exact_estimate,
    exact_probability,
    exact_signed_mean,
    expected_checkpoint,
    resolve_sign,
    run_circuit,
    shift_to_unit_interval,
)
from .qasm import QasmDocument, decompose_circuit, export_qasm
from .statevector import (
    CLOSED,
    MAX_QUBITS_DEFAULT,
    OPEN,
    Circuit,
    GateOp,
    MultiplexedRotY,
    QubitLayout,
    StateVector,
    apply_circuit,
    apply_circuit_with_snapshots,
    apply_gate,
    hadamard,
    new_ground_state,
    pauli_x,
    probability_of_bit,
    rot_y,
    sample_bit,
)

__version__ = "0.1.0"

__all__ = [
    "CLOSED",
    "OPEN",
    "MAX_QUBITS_DEFAULT",
    "STAGES",
    "CapacityError",
    "CheckpointState",
    "Circuit",
    "Dataset",
    "EncodedAngles",
    "ExportError",
    "GateOp",
    "MeanEstimate",
    "MultiplexedRotY",
    "QasmDocument",
    "QubitLayout",
    "StateVector",
    "angles_of",
    "apply_circuit",
    "apply_circuit_with_snapshots",
    "apply_gate",
    "build_mean_circuit",
    "build_qram_oracle",
    "classical_mean",
    "decompose_circuit",
    "encoded_pair",
    "estimate_mean",
    "exact_estimate",
    "exact_probability",
    "exact_signed_mean",
    "expanded_qram_oracle",
    "expected_checkpoint",
    "export_qasm",
    "hadamard",
    "new_ground_state",
    "oracle_unitarity_check",
    "pauli_x",
    "probability_of_bit",
    "rescale",
    "resolve_sign",
    "rot_y",
    "run_circuit",
    "sample_bit",
    "shift_to_unit_interval",
]
