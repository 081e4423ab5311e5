"""Two-qubit correlation dynamics in a lossy resonator (Python bindings)."""

from ._core import (
    InvalidArgument,
    NumericalError,
    __version__,
    concurrence,
    coupling_coefficient,
    entropy_vn,
    initial_state,
    measures,
    parse_config,
    quantum_discord,
    qubit_gap,
    reduce_to_qubits,
    run_validation,
    simulate,
)

__all__ = [
    "InvalidArgument",
    "NumericalError",
    "__version__",
    "concurrence",
    "coupling_coefficient",
    "entropy_vn",
    "initial_state",
    "measures",
    "parse_config",
    "quantum_discord",
    "qubit_gap",
    "reduce_to_qubits",
    "run_validation",
    "simulate",
]
