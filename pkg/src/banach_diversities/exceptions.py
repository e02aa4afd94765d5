"""Provides the exception classes raised by the library.

All exceptions are raised through the ataraxis console (console.error), which formats the message before raising the
requested exception class. Each class subclasses the closest builtin exception, so callers that catch ValueError or
RuntimeError continue to work.
"""


class DegenerateInputError(ValueError):
    """Raised when geometric input is degenerate, for example collinear points passed to a 2D hull."""


class DimensionMismatchError(ValueError):
    """Raised when vectors, point sets, or bodies that must share a dimension do not."""


class DegenerateBodyError(ValueError):
    """Raised when a symmetric polytope would not be full-dimensional or contains a zero generator."""


class NumericalFailureError(RuntimeError):
    """Raised when the simplex solver exhausts its pivot budget or fails its residual checks."""


class CertificateNotFoundError(RuntimeError):
    """Raised when an optimal-containment certificate cannot be extracted within tolerance."""


class IncompleteTableError(ValueError):
    """Raised when a diversity table does not store a value for some nonempty subset of its ground set."""


class NotAMetricError(ValueError):
    """Raised when a distance table violates symmetry, identity, or the triangle inequality."""


class TooManyPointsError(ValueError):
    """Raised when an exhaustive subset enumeration is requested for a too large point set."""


class NotThreePointsError(ValueError):
    """Raised when a three-point procedure receives a diversity table over a ground set of a different size."""


class InvalidDiversityError(ValueError):
    """Raised when a three-point table cannot be a diversity (a nonpositive pairwise or triple value)."""


class DegenerateQuadraticError(ValueError):
    """Raised when the quadratic form in the Banach upper bound is not strictly positive."""


class PreconditionViolatedError(ValueError):
    """Raised when the hypotheses of the contact-parameter check do not hold."""


class TargetOutOfRangeError(ValueError):
    """Raised when a witness is requested for a triple value outside the Banach interval."""


class BisectionStalledError(RuntimeError):
    """Raised when the witness bisection does not reach the target within its iteration budget."""


class SingularSystemError(ValueError):
    """Raised when the four-point face system has a near-zero pivot."""


class ZeroDenominatorError(ValueError):
    """Raised when a closed-form four-point expression has a vanishing denominator."""
