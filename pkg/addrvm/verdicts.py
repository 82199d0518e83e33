"""
Verdicts returned by the equivalence checkers.

Equiv and Distinct are sound. EquivUpTo is the bounded applicative
approximation: no fresh-indeterminate observation within the depth budget
separated the two sides. Unknown is the only incomplete answer.
"""

from dataclasses import dataclass, field
from typing import Optional, Union

from .core import Address
from .errors import EXIT_DISTINCT, EXIT_OK, EXIT_UNKNOWN

Path = tuple[tuple[str, int], ...]


def format_path(path: Path) -> str:
    """Render a position such as ``(("R", 1), ("T", 0))`` as ``R1.T0``; the root is ``.``."""
    if not path:
        return "."
    return ".".join(f"{kind}{index}" for kind, index in path)


@dataclass(frozen=True)
class Conflict:
    """
    A position where two machines provably disagree modulo evaluation.

    Attributes:
        path: Register (R) / tape (T) positions from the root
        left: Address found at that position on the left side
        right: Address found at that position on the right side
        detail: "shape" when the head-final states differ in shape,
            "normal forms differ" when both sides normalized completely
    """

    path: Path
    left: Address
    right: Address
    detail: str

    def __str__(self) -> str:
        return f"{format_path(self.path)}: {self.left} vs {self.right} ({self.detail})"


@dataclass(frozen=True)
class Witness:
    """
    A replayable applicative observation.

    Applying ``arguments`` in order to both sides and head-running them gives
    observations ``left`` and ``right`` (``x<n>``, ``stuck``, ``final``,
    ``cycle``, ``recurrence`` or ``fuel``).
    """

    arguments: tuple[Address, ...]
    left: str
    right: str

    def __str__(self) -> str:
        args = " ".join(str(a) for a in self.arguments) or "(none)"
        return f"after applying {args}: {self.left} vs {self.right}"


@dataclass(frozen=True)
class Equiv:
    def __str__(self) -> str:
        return "equiv"


@dataclass(frozen=True)
class EquivUpTo:
    """Not separated by any observation with up to ``depth`` fresh arguments."""

    depth: int

    def __str__(self) -> str:
        return f"equiv(depth={self.depth})"


@dataclass(frozen=True)
class Distinct:
    """
    Provably different, with the evidence: eval conflicts or an ae witness.

    ``reason`` is set when the separation rests on one side being taken as
    divergent, and says on what grounds.
    """

    conflicts: tuple[Conflict, ...] = ()
    witness: Optional[Witness] = None
    reason: Optional[str] = None

    def __str__(self) -> str:
        return "distinct"


@dataclass(frozen=True)
class Unknown:
    reason: str = field(default="fuel")

    def __str__(self) -> str:
        return f"unknown({self.reason})"


Verdict = Union[Equiv, EquivUpTo, Distinct, Unknown]


def verdict_exit_code(verdict: Verdict) -> int:
    """0 for equiv, 1 for distinct, 2 for unknown."""
    if isinstance(verdict, (Equiv, EquivUpTo)):
        return EXIT_OK
    if isinstance(verdict, Distinct):
        return EXIT_DISTINCT
    return EXIT_UNKNOWN
