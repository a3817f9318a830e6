"""Exception hierarchy shared by all modules.

Each class maps to one CLI exit status, see :mod:`quiverstrata.cli`.
"""


class QuiverError(Exception):
    """Base class for all errors raised by the package."""

    exit_code = 1


class ParseError(QuiverError):
    """Malformed textual input (quiver files, vectors, rationals)."""

    exit_code = 2


class PreconditionError(QuiverError, ValueError):
    """An operation was called outside its domain."""

    exit_code = 3


class BudgetError(PreconditionError):
    """An enumeration would exceed its resource budget."""


class InconclusiveDepthError(QuiverError):
    """A truncated computation cannot decide the answer at the given depth."""

    exit_code = 4


class ConsistencyError(QuiverError, AssertionError):
    """Two routes that must agree did not. Always a bug."""

    exit_code = 5
