"""Exception types shared across the package."""


class MeanforgeError(Exception):
    """Base class for all package errors."""


class NotHermitianError(MeanforgeError):
    """Input matrix fails the Hermitian symmetry check."""


class NoConvergenceError(MeanforgeError):
    """Eigensolver failed to converge."""


class DimMismatchError(MeanforgeError):
    """Operands have incompatible dimensions."""


class BadExponentError(MeanforgeError):
    """Schatten exponent p < 1."""


class BadOrderError(MeanforgeError):
    """Ky Fan order k outside [1, dim]."""


class BadIntervalError(MeanforgeError):
    """Integration interval with lo >= hi."""


class PoleError(MeanforgeError):
    """Kernel denominator vanishes at a non-removable point."""


class RangeViolationError(MeanforgeError):
    """Inequality parameters outside the registered validity ranges."""


class UnknownCaseError(MeanforgeError):
    """Inequality case id not present in the registry."""
