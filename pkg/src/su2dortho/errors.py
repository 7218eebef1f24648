"""Exception types raised across the package."""


class Su2DorthoError(Exception):
    """Base class for all package errors."""


class ZeroDenominatorParameter(Su2DorthoError, ZeroDivisionError):
    """A denominator Pochhammer symbol vanishes inside the truncation range."""


class NotNilpotent(Su2DorthoError, ValueError):
    pass


class EtaZero(Su2DorthoError, ValueError):
    pass


class IndexOutOfFamily(Su2DorthoError, IndexError):
    pass


class InterpolationDegreeMismatch(Su2DorthoError):
    pass


class ReflectionMismatch(Su2DorthoError):
    pass


class IdentityFailure(Su2DorthoError):
    """A polynomial or matrix identity left a nonzero residual.

    The residual is kept on the exception so callers (and the CLI) can
    report it.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class PatternViolation(Su2DorthoError):
    def __init__(self, message, offending=None):
        super().__init__(message)
        self.offending = offending
