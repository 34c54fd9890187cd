"""Correlation-informed qubit permutation pipeline for variational ground-state search."""

from .ansatz import AnsatzSpec, build, parameter_count, prune_ineffective
from .entanglement import (
    ConnectivityDistance,
    EntanglementMap,
    cost,
    entropy,
    mutual_information_map,
)
from .fermion import (
    IntegralSet,
    encode,
    hartree_fock_bitstring,
    hartree_fock_energy,
    load_fcidump,
)
from .ordering import OrderingResult, brute_force_order, fiedler_order, graph_laplacian
from .pauli import (
    PauliSum,
    PauliTerm,
    Permutation,
    apply_permutation,
    ground_state,
    parse_pauli_file,
    to_dense,
    write_pauli_file,
)
from .simulator import (
    Gate,
    NoiseModel,
    StateVector,
    apply_circuit,
    expectation,
    noisy_expectation,
    reduced_density_matrix,
)
from .vqe import (
    HARTREE_TO_KCAL,
    PermVqeResult,
    VqeConfig,
    VqeResult,
    delta_e_curve,
    min_depth_to_exact,
    minimize,
    permvqe,
    table1_hamiltonians,
)

__version__ = "0.1.0"

__all__ = [
    "AnsatzSpec",
    "ConnectivityDistance",
    "EntanglementMap",
    "Gate",
    "HARTREE_TO_KCAL",
    "IntegralSet",
    "NoiseModel",
    "OrderingResult",
    "PauliSum",
    "PauliTerm",
    "PermVqeResult",
    "Permutation",
    "StateVector",
    "VqeConfig",
    "VqeResult",
    "apply_circuit",
    "apply_permutation",
    "brute_force_order",
    "build",
    "cost",
    "delta_e_curve",
    "encode",
    "entropy",
    "expectation",
    "fiedler_order",
    "graph_laplacian",
    "ground_state",
    "hartree_fock_bitstring",
    "hartree_fock_energy",
    "load_fcidump",
    "min_depth_to_exact",
    "minimize",
    "mutual_information_map",
    "noisy_expectation",
    "parameter_count",
    "parse_pauli_file",
    "permvqe",
    "prune_ineffective",
    "reduced_density_matrix",
    "table1_hamiltonians",
    "to_dense",
    "write_pauli_file",
]
