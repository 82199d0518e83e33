"""
Abstract Base Class for Equivalence Checkers

Defines the interface every equivalence mode implements, so the CLI can
select a mode by name without knowing how it decides.
"""

from abc import ABC, abstractmethod
from typing import Optional

from ..atm import AddressTable
from ..config import get_settings
from ..core import Address
from ..verdicts import Conflict, Distinct, Equiv, EquivUpTo, Unknown, Verdict, Witness


class EquivalenceChecker(ABC):
    """
    Abstract base class for equivalence checkers.

    Attributes:
        table: Address table both operands live in
        fuel: Head-step budget for every run the checker performs
    """

    def __init__(self, table: AddressTable, fuel: Optional[int] = None):
        """
        Initialize the checker.

        Args:
            table: Address table both operands live in
            fuel: Head-step budget (defaults to settings.default_fuel)
        """
        self.table = table
        self.fuel = get_settings().default_fuel if fuel is None else fuel
        if self.fuel < 0:
            raise ValueError(f"fuel must be >= 0, got {self.fuel}")

    @property
    @abstractmethod
    def mode(self) -> str:
        """Mode name as selected on the command line."""
        pass

    @abstractmethod
    def check(self, a: Address, b: Address) -> Verdict:
        """
        Compare two addresses.

        Args:
            a: Left operand
            b: Right operand

        Returns:
            Verdict: Equiv / EquivUpTo, Distinct, or Unknown

        Raises:
            DanglingAddress: If either address was never issued
        """
        pass

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(mode={self.mode!r}, fuel={self.fuel})"


__all__ = [
    "EquivalenceChecker",
    "Conflict",
    "Distinct",
    "Equiv",
    "EquivUpTo",
    "Unknown",
    "Verdict",
    "Witness",
]
