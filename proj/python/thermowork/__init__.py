"""Work extraction from a thermalization protocol on bipartite quantum systems.

Energies are in units of hbar*omega and temperatures in units of hbar*omega/k_B.
Matrices are complex numpy arrays; composite indices follow i = i_A * d_B + i_B.
"""

from ._core import (
    ConvergenceError,
    DimensionError,
    InvalidStateError,
    NotHermitianError,
    NumericalError,
    ProtocolReport,
    RabiPoint,
    auto_converge,
    build_rabi_hamiltonian,
    delta_f,
    eig_hermitian,
    evaluate_point,
    expectation,
    free_energy,
    gibbs_state,
    mutual_information,
    partial_trace,
    perturbative_oracle,
    run_audit,
    run_protocol,
    tensor,
    verify_bound,
    von_neumann_entropy,
)

__all__ = [
    "ConvergenceError",
    "DimensionError",
    "InvalidStateError",
    "NotHermitianError",
    "NumericalError",
    "ProtocolReport",
    "RabiPoint",
    "auto_converge",
    "build_rabi_hamiltonian",
    "delta_f",
    "eig_hermitian",
    "evaluate_point",
    "expectation",
    "free_energy",
    "gibbs_state",
    "mutual_information",
    "partial_trace",
    "perturbative_oracle",
    "run_audit",
    "run_protocol",
    "tensor",
    "verify_bound",
    "von_neumann_entropy",
]
