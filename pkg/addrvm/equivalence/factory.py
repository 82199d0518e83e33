"""
Equivalence Checker Factory

Selects an equivalence mode by name, so commands pick the mode from a flag.
"""

from typing import Optional

from ..atm import AddressTable
from ..utils.logging import get_logger
from .applicative import ApplicativeChecker
from .base import EquivalenceChecker
from .evaluation import EvaluationChecker

logger = get_logger(__name__)

MODES = ("eval", "ae")


def create_checker(
    mode: str,
    table: AddressTable,
    fuel: Optional[int] = None,
    depth: Optional[int] = None,
    strict_distinct: Optional[bool] = None,
) -> EquivalenceChecker:
    """
    Create an equivalence checker for the given mode.

    Args:
        mode: "eval" (evaluation equivalence) or "ae" (applicative equivalence)
        table: Address table the operands live in
        fuel: Head-step budget per run (default: settings.default_fuel)
        depth: Fresh-argument depth, "ae" only (default: settings.default_depth)
        strict_distinct: Separate stuck from divergent, "ae" only

    Returns:
        Configured checker instance

    Raises:
        ValueError: If the mode is not recognized

    Example:
        checker = create_checker("ae", table, depth=2)
        verdict = checker.check(lib.K, lib.K_prime)
        print(verdict)  # equiv(depth=2)
    """
    mode_lower = mode.lower()

    logger.debug("creating checker", mode=mode_lower, fuel=fuel, depth=depth)

    if mode_lower == "eval":
        return EvaluationChecker(table, fuel=fuel)
    elif mode_lower == "ae":
        return ApplicativeChecker(table, fuel=fuel, depth=depth, strict_distinct=strict_distinct)
    else:
        raise ValueError(
            f"Unknown mode: {mode}. "
            f"Available modes: {', '.join(MODES)}"
        )
