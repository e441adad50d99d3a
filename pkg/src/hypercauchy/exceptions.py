"""The exceptions module"""


class HypercauchyError(Exception):
    """Base class for errors raised by hypercauchy"""


class DomainError(HypercauchyError, ValueError):
    """An argument lies outside the domain of a function, e.g. the origin
    for a kernel or zero for a Hankel function."""


class ConvergenceError(HypercauchyError, ArithmeticError):
    """A series or limit process did not converge within its budget."""


class BoundaryError(HypercauchyError, ValueError):
    """A point is on the curve where it must not be, or off the curve where
    it must be on it."""


class DensityError(HypercauchyError, ValueError):
    """A density cannot be evaluated, or does not meet a precondition."""

    def __init__(self, message: str, point=None):
        if point is not None:
            message = f"{message} at point ({point[0]!r}, {point[1]!r})"
        super().__init__(message)
        self.point = point


class ExpressionSyntaxError(DensityError):
    """A density expression could not be parsed."""

    def __init__(self, message: str, line: int = None, column: int = None):
        if line is not None and column is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class ConfigError(HypercauchyError, ValueError):
    """A scenario or settings file is malformed or out of supported range."""
