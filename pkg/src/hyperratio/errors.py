"""Exception hierarchy shared by every module."""


class HyperRatioError(Exception):
    """Base class for all errors raised by hyperratio."""


class DomainError(HyperRatioError, ValueError):
    """Argument lies outside the domain where the series is evaluated."""


class PreconditionError(HyperRatioError, ValueError):
    """A documented precondition on the inputs does not hold."""


class LengthMismatchError(PreconditionError):
    """Parameter vectors that must have equal length do not."""


class PrecisionError(HyperRatioError, ArithmeticError):
    """The requested accuracy could not be certified."""
