"""Banded-splitting stationary solvers with class certification and prediction."""

from .engine import (
    DIVERGENCE_GUARD,
    ConvergenceVerdict,
    IterationConfig,
    PowerEstimate,
    SolveReport,
    predict,
    solve,
    spectral_radius,
)
from .matrices import (
    DEFAULT_DENSE_LIMIT,
    BandedSplitting,
    ClassificationReport,
    SquareMatrix,
    classify,
    comparison_matrix,
    extract_splitting,
    is_h_matrix,
    is_l_matrix,
    is_m_matrix,
    is_sdd,
    is_spd,
    is_z_matrix,
)
from .mmio import read_matrix, read_vector, write_matrix, write_vector
from .pde import LAYOUT_BENCH, LAYOUT_SQUARE, G_BUILTINS, PdeProblem, assemble, builtin_g
from .solvers import (
    FactorizationError,
    Method,
    RelaxationWarning,
    StepOperator,
    apply_step,
    build_step,
    iteration_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "BandedSplitting",
    "ClassificationReport",
    "ConvergenceVerdict",
    "DEFAULT_DENSE_LIMIT",
    "DIVERGENCE_GUARD",
    "FactorizationError",
    "G_BUILTINS",
    "IterationConfig",
    "LAYOUT_BENCH",
    "LAYOUT_SQUARE",
    "Method",
    "PdeProblem",
    "PowerEstimate",
    "RelaxationWarning",
    "SolveReport",
    "SquareMatrix",
    "StepOperator",
    "apply_step",
    "assemble",
    "build_step",
    "builtin_g",
    "classify",
    "comparison_matrix",
    "extract_splitting",
    "is_h_matrix",
    "is_l_matrix",
    "is_m_matrix",
    "is_sdd",
    "is_spd",
    "is_z_matrix",
    "iteration_matrix",
    "predict",
    "read_matrix",
    "read_vector",
    "solve",
    "spectral_radius",
    "write_matrix",
    "write_vector",
]
