"""Exception types shared across the package."""


class CubicRigidError(Exception):
    """Base class for all package-specific errors."""


class RingMismatchError(CubicRigidError):
    """Operands live in different coefficient rings (e.g. mixed moduli)."""


class NotPrimeError(CubicRigidError):
    """A modulus that must be prime is not."""


class InexactDivisionError(CubicRigidError):
    """An exact division left a nonzero remainder."""


class DegeneracyError(CubicRigidError):
    """Input degenerate for the requested operation (zero polynomial,
    constant in the eliminated variable, ...)."""


class ResourceLimitError(CubicRigidError):
    """A configured size/enumeration budget would be exceeded.

    Carries the limit so callers can report it.
    """

    def __init__(self, message, limit=None):
        super().__init__(message)
        self.limit = limit


class BoundViolationError(CubicRigidError):
    """Interpolation produced a non-integer coefficient: the caller's
    degree bound was wrong.  Never rounded away."""


class InvariantViolationError(CubicRigidError):
    """An internal exactness invariant failed (implementation bug)."""


class NumericFailureError(CubicRigidError):
    """Numeric root finding failed to converge."""
