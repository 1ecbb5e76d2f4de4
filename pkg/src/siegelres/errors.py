"""Exception types shared across the package."""


class SiegelResError(Exception):
    """Base class for all errors raised by this package."""


class PoleError(SiegelResError, ZeroDivisionError):
    """A factor was evaluated exactly at one of its poles.

    Attributes
    ----------
    factor : str
        Human readable name of the singular factor, e.g. ``"zeta(2s-1)"``.
    point : complex
        Argument at which the factor was evaluated.
    """

    def __init__(self, factor, point):
        self.factor = factor
        self.point = point
        super().__init__(f"pole of {factor} at argument {point}")


class DomainError(SiegelResError, ValueError):
    """Arguments lie outside the region where an operation is implemented."""


class ConvergenceError(SiegelResError, ArithmeticError):
    """A series or quadrature failed to reach the requested tolerance."""


class MissingInputError(SiegelResError, LookupError):
    """A required user-supplied quantity was not provided."""
