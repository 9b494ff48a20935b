"""Exception hierarchy shared by every module.

The CLI maps ``ZeroStopError`` subclasses to exit code 1 and prints the
message verbatim, so messages are written for end users.
"""


class ZeroStopError(Exception):
    """Base class for all package errors."""


class ParseError(ZeroStopError, ValueError):
    """Malformed numeric or multiset input."""


class ZeroDenominatorError(ParseError, ZeroDivisionError):
    """A ``p/q`` literal with ``q = 0``."""


class DomainError(ZeroStopError, ValueError):
    """Input outside an operation's mathematical domain."""


class NonZeroSumError(DomainError):
    """A multiset whose elements do not sum to exactly zero."""

    def __init__(self, residual):
        from .numerics import format_rational

        self.residual = residual
        super().__init__(f"multiset does not sum to zero (residual {format_rational(residual)})")


class RefusalError(ZeroStopError):
    """A request that would exceed a documented size or step guard."""


class InvariantViolation(ZeroStopError, AssertionError):
    """A proven invariant failed at runtime; indicates a bug."""
