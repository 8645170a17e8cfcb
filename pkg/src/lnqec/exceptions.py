"""Exception types raised across the package."""


class LNQECError(Exception):
    """Base class for all package errors."""


class SingularMatrix(LNQECError, ValueError):
    pass


class RankDeficient(LNQECError, ValueError):
    pass


class ZeroMatrix(LNQECError, ValueError):
    pass


class InternalRankError(LNQECError, AssertionError):
    """The derived square block A is singular, which the construction rules out."""


class DimensionMismatch(LNQECError, ValueError):
    pass


class LengthMismatch(LNQECError, ValueError):
    pass


class PreconditionViolated(LNQECError, ValueError):
    pass


class BudgetExceeded(LNQECError, RuntimeError):
    pass


class NoCodewords(LNQECError, ValueError):
    pass


class CapExceeded(LNQECError, RuntimeError):
    pass


class NotProductState(LNQECError, RuntimeError):
    """Auxiliary register is entangled with the data register."""


class DistanceViolation(LNQECError, ValueError):
    """Two correctable error patterns share a syndrome; the supplied t is too large."""


class NoRedundantRows(LNQECError, ValueError):
    pass


class ParseError(LNQECError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
