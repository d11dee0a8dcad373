"""Exception hierarchy shared by every layer of the engine."""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all engine errors."""


class SearchBudgetExceeded(EngineError):
    """A bounded enumeration would visit more candidates than allowed."""

    def __init__(self, needed: int, budget: int, what: str = "search"):
        super().__init__(f"{what}: {needed} candidates exceed budget {budget}")
        self.needed = needed
        self.budget = budget
        self.what = what


class TheoremViolation(EngineError):
    """A computed verdict contradicts a proven equivalence; signals a bug."""


class ValidationError(EngineError):
    """A fixture or presentation fails a load-time invariant."""

    def __init__(self, failures: list[str] | str):
        if isinstance(failures, str):
            failures = [failures]
        self.failures = list(failures)
        super().__init__("; ".join(self.failures))


class PreconditionError(EngineError):
    """An operation was called outside its domain."""


class DimensionMismatch(EngineError):
    """Matrix shapes do not fit together."""


class BackendFailure(EngineError):
    """The concrete backend could not produce a result (malformed input)."""
