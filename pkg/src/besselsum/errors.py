"""Exception and warning types shared across the package."""

from __future__ import annotations


class BesselSumError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(BesselSumError, ValueError):
    """An argument lies outside the domain a routine supports."""


class NonConvergenceError(BesselSumError, ArithmeticError):
    """An iteration or series failed to converge within its limits."""


class PrecisionLossError(BesselSumError, ArithmeticError):
    """A formula was rejected because cancellation would eat the result.

    Raised by closed forms whose intermediate terms grow large relative to
    the answer; callers may fall back to a slower, stable route.
    """


class BudgetError(BesselSumError, ArithmeticError):
    """A quadrature could not meet its error budget.

    Attributes
    ----------
    achieved:
        The error estimate actually attained.
    budget:
        The requested bound.
    """

    def __init__(self, message: str, achieved: float, budget: float):
        super().__init__(message)
        self.achieved = achieved
        self.budget = budget


class AmbiguousNormalizationError(BesselSumError, ArithmeticError):
    """Neither candidate normalization matched the reference integral."""


class MisplacedContourError(DomainError):
    """A gamma pole lies within one node spacing of the integration contour."""


class ConditionalConvergenceWarning(UserWarning):
    """The integrand decays too slowly for absolute convergence; the result
    relies on oscillatory cancellation."""


class TruncationWarning(UserWarning):
    """A truncated upper limit contributes error near the requested tolerance."""
