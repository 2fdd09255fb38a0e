"""Exception hierarchy shared across the package."""


class CheckerlagError(Exception):
    """Base class for all package errors."""


class ValidationError(CheckerlagError):
    """Input data violates an invariant (bad coefficients, nodes, files)."""


class NumericalError(CheckerlagError):
    """A numerical procedure failed (non-convergence, rank deficiency)."""


class RootFindingError(NumericalError):
    """Zero computation produced an inconsistent root set."""


class ConvergenceError(NumericalError):
    """Iterative solve did not reach its tolerance within the cap."""


class RankDeficiencyError(NumericalError):
    """A matrix expected to have full row rank does not."""


class DimensionMismatchError(ValidationError):
    """Null-space dimension disagrees with the expected quotient dimension."""


class SpanMismatchError(ValidationError):
    """Null space and vanishing basis span different subspaces."""
