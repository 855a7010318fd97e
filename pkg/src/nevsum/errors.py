"""Exception types shared across the library."""


class NevsumError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(NevsumError):
    pass


class NotHermitian(NevsumError):
    pass


class SingularMatrix(NevsumError):
    pass


class DegenerateSubspace(NevsumError):
    pass


class DegenerateAmbient(NevsumError):
    pass


class NotInResolventSet(NevsumError):
    pass


class PreconditionFailed(NevsumError):
    pass


class PoleHit(NevsumError):
    pass


class SymmetryViolation(NevsumError):
    pass


class UnsupportedPolynomialGrowth(NevsumError):
    pass


class UnsupportedFieldExtension(NevsumError):
    """Raised when a computation would leave the Gaussian rationals."""


class BudgetExhausted(NevsumError):
    pass


class NotAnEigenvalue(NevsumError):
    pass


class InvalidParams(NevsumError):
    pass


class DegenerateCandidate(NevsumError):
    pass


class CrossCheckError(NevsumError):
    """Two independent computation routes disagreed (internal bug trap)."""
