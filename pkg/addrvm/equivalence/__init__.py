"""Equivalence checkers: evaluation equivalence and bounded applicative equivalence."""

from .applicative import (
    RECURRENCE_BASIS,
    ApplicativeChecker,
    ae_check,
    fresh_indeterminate,
    observation,
    replay_witness,
)
from .base import EquivalenceChecker
from .evaluation import EvaluationChecker
from .factory import MODES, create_checker

__all__ = [
    "EquivalenceChecker",
    "EvaluationChecker",
    "ApplicativeChecker",
    "create_checker",
    "MODES",
    "ae_check",
    "fresh_indeterminate",
    "observation",
    "replay_witness",
    "RECURRENCE_BASIS",
]
