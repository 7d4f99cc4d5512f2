"""Exception hierarchy for SiegelTheta."""

from typing import Optional


class ThetaError(Exception):
    """Base class for every error raised by the library."""


class DimensionError(ThetaError):
    """Operands have incompatible shapes or degrees."""


class DomainError(ThetaError):
    """A scalar argument lies outside the domain of an operation."""


class SingularMatrixError(ThetaError):
    """A matrix is numerically singular.

    Attributes:
        pivot: Magnitude of the smallest pivot met during elimination
    """

    def __init__(self, message: str, pivot: float = 0.0):
        super().__init__(message)
        self.pivot = pivot


class InvalidPointError(ThetaError):
    """A pair (Omega, Z) is not a point of the Siegel-Jacobi space."""


class InvalidElementError(ThetaError):
    """An integer matrix or triple is not a valid group element."""


class TermBudgetExceeded(ThetaError):
    """A lattice sum would need more terms than the configured budget."""

    def __init__(self, estimate: float, budget: int, radius: float):
        super().__init__(
            f"truncation radius {radius:.3f} needs about {estimate:.3g} terms "
            f"(budget {budget}); reduce the point first or raise the budget"
        )
        self.estimate = estimate
        self.budget = budget
        self.radius = radius


class ThetaTooSmallError(ThetaError):
    """Theta is too close to zero at a point to divide by it reliably."""

    def __init__(self, magnitude: float, threshold: float):
        super().__init__(
            f"|Theta| = {magnitude:.3g} is below {threshold:.3g}; "
            "retry at another point"
        )
        self.magnitude = magnitude
        self.threshold = threshold


class InputFormatError(ThetaError):
    """JSON input could not be decoded into a library value."""

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field
