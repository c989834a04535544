"""Shared exception types."""


class SchramseyError(Exception):
    """Base class for all library errors."""


class OrdinalRangeError(SchramseyError):
    """Ordinal would leave the supported range (tower depth or coefficient cap)."""


class OrdinalParseError(SchramseyError):
    """Malformed or non-canonical ordinal text; carries the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class HorizonExceeded(SchramseyError):
    """An operation tried to read past the materialized prefix of a stream."""


class BudgetExceeded(SchramseyError):
    """An enumeration or search grew past its configured budget."""


class OracleUndecided(SchramseyError):
    """A chain oracle could not give a definite answer at its horizon."""


class ReductionMismatch(SchramseyError):
    """A sequence is not a reduction of the given stream."""
