"""Exception types shared across the package."""
from __future__ import annotations


class QuizzyError(Exception):
    """Base class for errors raised by this package."""


class BudgetExceededError(QuizzyError):
    """A computation would exceed a configured resource budget."""


class ExperimentalCategoryError(QuizzyError, ValueError):
    """An experimental category was requested without opting in."""


class SingularMatrixError(QuizzyError, ArithmeticError):
    """Exact inversion of a singular matrix was requested."""


class SingularGramError(SingularMatrixError):
    """Gram matrix is singular at this N, so no Weingarten matrix exists."""

    def __init__(self, message: str, minimal_n: int | None = None):
        super().__init__(message)
        self.minimal_n = minimal_n


class CacheCorruptionError(QuizzyError):
    """A cache entry could not be decoded."""
