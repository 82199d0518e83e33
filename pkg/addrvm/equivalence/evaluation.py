"""Evaluation equivalence as a checker mode."""

from ..core import Address
from ..reduction import eval_equiv
from ..verdicts import Verdict
from .base import EquivalenceChecker


class EvaluationChecker(EquivalenceChecker):
    """Interconvertibility under full reduction, decided by deep normal forms."""

    @property
    def mode(self) -> str:
        return "eval"

    def check(self, a: Address, b: Address) -> Verdict:
        return eval_equiv(a, b, self.table, self.fuel)
