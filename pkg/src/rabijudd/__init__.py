"""Juddian points of the Rabi Hamiltonian and their numerical validation."""

from .bosons import (
    SqueezeParams,
    displaced_osc_hamiltonian,
    displacement_matrix,
    ladder_matrices,
    squeeze_params,
    squeezed_osc_hamiltonian,
)
from .juddian import (
    CompatibilitySystem,
    JuddianPoint,
    JuddianState,
    VerificationReport,
    alternate_branch,
    baseline_energy,
    build_full_system,
    compatibility_polynomial,
    compatibility_system,
    juddian_points,
    reconstruct_state,
    verify_point,
)
from .numerics import (
    EigResult,
    FullRankError,
    NearDoubleRootWarning,
    NonConvergenceError,
    Polynomial,
    RootCountError,
    null_vector,
    poly_eval,
    poly_real_roots,
    sym_eig,
    tridiag_det_poly,
)
from .rabi import (
    Crossing,
    ModelParams,
    ParityBlock,
    SpectrumTable,
    build_rabi,
    find_crossings,
    parity_blocks,
    parity_matrix,
    spectrum_sweep,
)

__all__ = [
    "CompatibilitySystem",
    "Crossing",
    "EigResult",
    "FullRankError",
    "JuddianPoint",
    "JuddianState",
    "ModelParams",
    "NearDoubleRootWarning",
    "NonConvergenceError",
    "ParityBlock",
    "Polynomial",
    "RootCountError",
    "SpectrumTable",
    "SqueezeParams",
    "VerificationReport",
    "alternate_branch",
    "baseline_energy",
    "build_full_system",
    "build_rabi",
    "compatibility_polynomial",
    "compatibility_system",
    "displaced_osc_hamiltonian",
    "displacement_matrix",
    "find_crossings",
    "juddian_points",
    "ladder_matrices",
    "null_vector",
    "parity_blocks",
    "parity_matrix",
    "poly_eval",
    "poly_real_roots",
    "reconstruct_state",
    "spectrum_sweep",
    "squeeze_params",
    "squeezed_osc_hamiltonian",
    "sym_eig",
    "tridiag_det_poly",
    "verify_point",
]

__version__ = "0.1.0"
