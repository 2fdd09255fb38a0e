"""Bivariate Lagrange interpolation bases on checkerboard node sets.

Construction pipeline: recurrence coefficients define univariate
polynomial sequences; their combination zeros give strictly decreasing
node sequences; the parity-split rectangular grid carries an explicit
Lagrange basis evaluated through kernel sums; vanishing polynomials pin
down the quotient space in which that basis is unique, and the verify
module checks all of it numerically.
"""

from .checkerboard import (
    CheckerboardSet,
    GridInstance,
    build_checkerboard,
    count_nodes,
    grid_from_coeffs,
    grid_from_nodes,
    make_grid,
)
from .errors import (
    CheckerlagError,
    ConvergenceError,
    DimensionMismatchError,
    NumericalError,
    RankDeficiencyError,
    RootFindingError,
    SpanMismatchError,
    ValidationError,
)
from .interp import Interpolant, eval_interpolant, eval_interpolant_many, interpolate
from .lagrange import (
    BasisFunction,
    boundary_J,
    build_basis,
    eval_G,
    eval_L,
    eval_L_many,
    kernel_K,
    max_delta_error,
)
from .monomials import MonomialPoly, graded_indices, space_dim
from .nodemap import (
    NodeSequence,
    alternation_error,
    coeffs_from_nodes,
    gamma_rescale,
    nodes_from_coeffs,
)
from .orthopoly import ComboSpec, RecurrenceCoeffs, combo_zeros, eval_sequence
from .presets import chebyshev_grid, padua_grid
from .vanishing import QuotientBasis, build_Q, build_V, quotient_dim
from .verify import (
    NullspaceReport,
    UniquenessReport,
    VerifyReport,
    basis_matches_oracle_mod_Q,
    monomial_coeffs,
    nullspace_equals_Q,
    oracle_lagrange,
    rank,
    vandermonde,
    verify_grid,
)

__version__ = "0.1.0"

__all__ = [
    "BasisFunction",
    "CheckerboardSet",
    "CheckerlagError",
    "ComboSpec",
    "ConvergenceError",
    "DimensionMismatchError",
    "GridInstance",
    "Interpolant",
    "MonomialPoly",
    "NodeSequence",
    "NullspaceReport",
    "NumericalError",
    "QuotientBasis",
    "RankDeficiencyError",
    "RecurrenceCoeffs",
    "RootFindingError",
    "SpanMismatchError",
    "UniquenessReport",
    "ValidationError",
    "VerifyReport",
    "alternation_error",
    "basis_matches_oracle_mod_Q",
    "boundary_J",
    "build_Q",
    "build_V",
    "build_basis",
    "build_checkerboard",
    "chebyshev_grid",
    "coeffs_from_nodes",
    "combo_zeros",
    "count_nodes",
    "eval_G",
    "eval_L",
    "eval_L_many",
    "eval_interpolant",
    "eval_interpolant_many",
    "eval_sequence",
    "gamma_rescale",
    "graded_indices",
    "grid_from_coeffs",
    "grid_from_nodes",
    "interpolate",
    "kernel_K",
    "make_grid",
    "max_delta_error",
    "monomial_coeffs",
    "nodes_from_coeffs",
    "nullspace_equals_Q",
    "oracle_lagrange",
    "padua_grid",
    "quotient_dim",
    "rank",
    "space_dim",
    "vandermonde",
    "verify_grid",
]
