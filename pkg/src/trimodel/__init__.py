"""Exhaustive certification of proper classes, cotorsion pairs and model structures on finite triangulated categories."""

from .errors import (
    BackendFailure,
    DimensionMismatch,
    EngineError,
    PreconditionError,
    SearchBudgetExceeded,
    TheoremViolation,
    ValidationError,
)
from .fixtures import Fixture, load_fixture

__all__ = [
    "BackendFailure",
    "DimensionMismatch",
    "EngineError",
    "Fixture",
    "PreconditionError",
    "SearchBudgetExceeded",
    "TheoremViolation",
    "ValidationError",
    "load_fixture",
]
__version__ = "0.1.0"
