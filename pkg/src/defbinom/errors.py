"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class DivisionUndefinedError(DomainError, ZeroDivisionError):
    """Division by a series whose constant term vanishes."""


class OrderMismatchError(ValueError):
    """Two truncated series were combined with different truncation orders."""


class TruncationError(ValueError):
    """A requested index lies beyond the truncation order of a series."""


class ConvergenceError(ArithmeticError):
    """A truncated series is evaluated where its tail is not negligible."""

    def __init__(self, message, diagnostic=None):
        super().__init__(message)
        self.diagnostic = diagnostic
