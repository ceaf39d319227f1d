"""Search for fast matrix-multiplication algorithms via binary optimization.

The package formulates tensor-decomposition search as higher-order binary
optimization, reduces the objectives to quadratic form for export, solves
them with classical heuristics, and verifies discovered decompositions by
executing them as matrix-multiplication algorithms.
"""

from .pbpoly import PseudoBooleanPolynomial, VariableRegistry
from .quadratize import (
    IntegerEncoding,
    QuadraticModel,
    ReductionReport,
    encode_integer_log,
    encode_integer_ternary_pair,
    reduce_min_selection,
    reduce_substitution,
)
from .solvers import SolverConfig, SolverResult, solve
from .tensors import (
    FIELD_F2,
    FIELD_R,
    Decomposition,
    MatMulShape,
    RankOneTriple,
    Tensor3,
    hamming_distance,
    rank_one,
    standard_tensor,
    subtract,
    sum_decomposition,
)

__version__ = "0.1.0"

__all__ = [
    "Decomposition",
    "FIELD_F2",
    "FIELD_R",
    "IntegerEncoding",
    "MatMulShape",
    "PseudoBooleanPolynomial",
    "QuadraticModel",
    "RankOneTriple",
    "ReductionReport",
    "SolverConfig",
    "SolverResult",
    "Tensor3",
    "VariableRegistry",
    "encode_integer_log",
    "encode_integer_ternary_pair",
    "hamming_distance",
    "rank_one",
    "reduce_min_selection",
    "reduce_substitution",
    "solve",
    "standard_tensor",
    "subtract",
    "sum_decomposition",
    "__version__",
]
