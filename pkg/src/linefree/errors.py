"""Exception hierarchy."""

from __future__ import annotations


class LinefreeError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(LinefreeError, ValueError):
    pass


class IdenticalLines(InvalidInput):
    pass


class BadIndex(InvalidInput, IndexError):
    pass


class ParseError(InvalidInput):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class CountingIdentityViolation(LinefreeError):
    """The pair-count identity failed; signals a bug upstream."""


class InternalInconsistency(LinefreeError):
    """Two independent routes disagreed."""


class NoRelationFound(LinefreeError):
    pass


class NotStabilized(InternalInconsistency):
    pass


class CaseConflict(InternalInconsistency):
    pass


class Inconsistent(LinefreeError):
    """Supplied facts contradict each other."""


class NoIntegerDecomposition(LinefreeError):
    pass


class InconsistentTable(InvalidInput):
    pass


class Unbounded(LinefreeError):
    pass


class UnknownName(LinefreeError, KeyError):
    pass


class NotThirteen(InvalidInput):
    pass


class NotFourteen(InvalidInput):
    pass


class TooManyLines(InvalidInput):
    pass


class BranchHypothesisUnverifiable(LinefreeError):
    """No branch of a decision tree matched the input."""


class CertificationFailed(LinefreeError):
    """A modular result could not be confirmed over the rationals."""
