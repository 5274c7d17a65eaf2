"""Exception hierarchy shared by all modules.

Each class maps to one CLI exit code, see cli.py.
"""

from __future__ import annotations


class SquareFactorError(Exception):
    """Base class for all library errors."""


class FormatError(SquareFactorError):
    """Malformed input text (edge list or JSON artifact)."""


class ArgumentError(SquareFactorError):
    """A caller passed an argument violating a documented precondition."""


class PreconditionError(SquareFactorError):
    """A hypothesis required by a construction does not hold for the input.

    Carries the structured violation list so callers can report it.
    """

    def __init__(self, message: str, violations: list | None = None):
        super().__init__(message)
        self.violations = violations or []


class BudgetExceededError(SquareFactorError):
    """An exact search refused to start or ran past its node budget."""

    def __init__(self, message: str, partial_state=None):
        super().__init__(message)
        self.partial_state = partial_state


class InternalInvariantError(SquareFactorError):
    """A guaranteed-by-construction invariant failed; indicates a bug.

    Never raised for bad user input: those get ArgumentError or
    PreconditionError.
    """

    def __init__(self, message: str, trace=None):
        super().__init__(message)
        self.trace = trace
