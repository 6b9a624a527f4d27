"""Exact computations for quizzy quantum groups: partitions, fixed-point spaces, orbitals."""
from __future__ import annotations

from .errors import (BudgetExceededError, CacheCorruptionError, ExperimentalCategoryError,
                     QuizzyError, SingularGramError, SingularMatrixError)
from .intertwiners import (QuizzySpec, fix_dim, constrained_fix_dim, liberation_level,
                           sudoku_moment, weingarten_integrate, word_moment)
from .partitions import SetPartition, enumerate_category, signature

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError", "CacheCorruptionError", "ExperimentalCategoryError", "QuizzyError",
    "SingularGramError", "SingularMatrixError", "QuizzySpec", "SetPartition",
    "constrained_fix_dim", "enumerate_category", "fix_dim", "liberation_level", "signature",
    "sudoku_moment", "weingarten_integrate", "word_moment",
]
