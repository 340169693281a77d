"""Exception hierarchy.

Every error raised by the package derives from :class:`SigmaError`; the ones
that describe bad input also derive from :class:`ValueError`.
"""

from __future__ import annotations


class SigmaError(Exception):
    """Base class for all package errors."""


class NonUnitMass(SigmaError, ValueError):
    pass


class NegativeWeight(SigmaError, ValueError):
    pass


class DuplicateLabel(SigmaError, ValueError):
    pass


class UnknownOutcome(SigmaError, ValueError):
    pass


class NotAPartition(SigmaError, ValueError):
    pass


class SpaceMismatch(SigmaError, ValueError):
    pass


class EmptyFamily(SigmaError, ValueError):
    pass


class CapExceeded(SigmaError):
    """A combinatorial search or tuple scan would exceed its configured cap."""


class NotIndependent(SigmaError):
    """The independent sum ``X + Y`` is undefined because X and Y are dependent."""


class NotSub(SigmaError, ValueError):
    pass


class PreconditionFailed(SigmaError):
    pass


class HypothesisFailed(SigmaError):
    pass


class EquivalenceViolated(SigmaError):
    """A proven equivalence disagreed on an instance; indicates a bug."""


class UnknownLaw(SigmaError, KeyError):
    pass


class ReplayMismatch(SigmaError):
    pass


class UnknownExample(SigmaError, KeyError):
    pass


class LevelTooLarge(SigmaError, ValueError):
    pass


class ParseError(SigmaError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


class ValidationError(SigmaError, ValueError):
    pass
