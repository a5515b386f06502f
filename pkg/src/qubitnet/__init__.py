"""Dense statevector simulation of entangled qubit lattice networks."""

__version__ = "0.1.0"

from .analysis import (
    DominanceReport,
    PeriodReport,
    back_project,
    detect_period,
    dominant_components,
    dominant_set,
    fidelity,
    uniformity_deviation,
)
from .detection import (
    SearchSpec,
    detect,
    grover_iterate,
    optimal_iterations,
    rotate_basis_to_target,
    run_detection,
    success_probability,
)
from .evolution import (
    EvolutionConfig,
    Trajectory,
    evolve,
    evolve_with_operator,
    inject_periodic_orbit,
    reverse_evolve,
    sweep,
)
from .gates import GateKind, GateSpec, apply_two_qubit_gate, dense_matrix_of, make_gate
from .lattice import (
    MAX_QUBITS,
    LatticeTopology,
    basis_index_from_set,
    basis_state,
    qubit_state,
    state_from_amplitudes,
)
from .snapshots import (
    SnapshotError,
    SnapshotHeader,
    SnapshotVersionError,
    format_snapshot,
    parse_snapshot,
    read_snapshot,
    write_snapshot,
)
from .state_prep import ExtendedOperator, check_orthogonality, make_extended_operator, superpose

__all__ = [
    "__version__",
    "MAX_QUBITS",
    "LatticeTopology",
    "basis_index_from_set",
    "basis_state",
    "qubit_state",
    "state_from_amplitudes",
    "GateKind",
    "GateSpec",
    "make_gate",
    "apply_two_qubit_gate",
    "dense_matrix_of",
    "EvolutionConfig",
    "Trajectory",
    "sweep",
    "evolve",
    "reverse_evolve",
    "inject_periodic_orbit",
    "evolve_with_operator",
    "DominanceReport",
    "PeriodReport",
    "dominant_components",
    "dominant_set",
    "back_project",
    "fidelity",
    "uniformity_deviation",
    "detect_period",
    "ExtendedOperator",
    "make_extended_operator",
    "superpose",
    "check_orthogonality",
    "SearchSpec",
    "rotate_basis_to_target",
    "grover_iterate",
    "optimal_iterations",
    "success_probability",
    "detect",
    "run_detection",
    "SnapshotError",
    "SnapshotVersionError",
    "SnapshotHeader",
    "format_snapshot",
    "parse_snapshot",
    "read_snapshot",
    "write_snapshot",
]
