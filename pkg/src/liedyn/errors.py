"""Shared exception types.

Everything raised on purpose by this package derives from LiedynError so
callers (and the command line driver) can distinguish domain failures from
genuine bugs.
"""


class LiedynError(Exception):
    """Base class for all errors raised deliberately by liedyn."""


class RingMismatchError(LiedynError):
    """Arithmetic between scalars whose rings are incompatible."""


class SpaceMismatchError(LiedynError):
    """Operation mixing elements that live over different spaces."""


class NotInImageError(LiedynError):
    """A linear problem (g - U^{-1}g = f, exact Laurent division, ...)
    has no solution in the backend."""


class CentralPartError(LiedynError):
    """An operation that requires a vanishing central part got one anyway."""


class NonFiniteBackendError(LiedynError):
    """A finite-dimensional-only operation was invoked on the torus backend."""


class ParseError(LiedynError):
    """Expression/grammar failure.  Carries position info for diagnostics."""

    def __init__(self, message, line=1, column=1, expected=()):
        super().__init__(message)
        self.line = line
        self.column = column
        self.expected = tuple(expected)

    def diagnostic(self):
        loc = f"line {self.line}, column {self.column}"
        msg = f"{loc}: {self.args[0]}"
        if self.expected:
            msg += " (expected: " + ", ".join(self.expected) + ")"
        return msg
