"""
Instructions and programs of the three-instruction assembly.

A program is a list of Loads, then Apps, then at most one trailing Call.
Register indices are plain naturals; an index at or beyond the register
count names a non-existing register (writes to it are discarded).
"""

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .errors import ProgramSyntaxError


@dataclass(frozen=True, slots=True)
class Load:
    """Read the next tape item into register ``i``."""

    i: int

    def __str__(self) -> str:
        return f"Load {self.i}"


@dataclass(frozen=True, slots=True)
class App:
    """Store the application of registers ``i`` and ``j`` into register ``k``."""

    i: int
    j: int
    k: int

    def __str__(self) -> str:
        return f"App {self.i} {self.j} {self.k}"


@dataclass(frozen=True, slots=True)
class Call:
    """Transfer control to the machine addressed by register ``i``."""

    i: int

    def __str__(self) -> str:
        return f"Call {self.i}"


Instruction = Union[Load, App, Call]

_RANK = {Load: 0, App: 1, Call: 2}


def check_shape(instrs: Iterable[Instruction]) -> None:
    """
    Check that instructions follow the Load* App* Call? shape.

    Raises:
        ProgramSyntaxError: index is the position of the first misplaced instruction
    """
    rank = 0
    for index, ins in enumerate(instrs):
        kind = type(ins)
        if kind not in _RANK:
            raise ProgramSyntaxError(f"not an instruction: {ins!r}", index=index)
        if rank == 2:
            raise ProgramSyntaxError(f"'{ins}' after Call", index=index)
        if _RANK[kind] < rank:
            raise ProgramSyntaxError(f"'{ins}' after App", index=index)
        for value in _indices(ins):
            if not isinstance(value, int) or value < 0:
                raise ProgramSyntaxError(f"bad register index in '{ins}'", index=index)
        rank = _RANK[kind]


def _indices(ins: Instruction) -> tuple[int, ...]:
    if type(ins) is App:
        return (ins.i, ins.j, ins.k)
    return (ins.i,)


@dataclass(frozen=True, slots=True)
class Program:
    """An immutable, grammatical instruction sequence (possibly empty)."""

    instrs: tuple[Instruction, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.instrs, tuple):
            object.__setattr__(self, "instrs", tuple(self.instrs))
        check_shape(self.instrs)

    @classmethod
    def trusted(cls, instrs: tuple[Instruction, ...]) -> "Program":
        """Build a program from instructions already known to be well-shaped."""
        program = object.__new__(cls)
        object.__setattr__(program, "instrs", instrs)
        return program

    @property
    def is_empty(self) -> bool:
        return not self.instrs

    @property
    def head(self) -> Instruction:
        return self.instrs[0]

    def tail(self) -> "Program":
        # every suffix of a well-shaped program is well-shaped
        return Program.trusted(self.instrs[1:])

    def __len__(self) -> int:
        return len(self.instrs)

    def __iter__(self) -> Iterator[Instruction]:
        return iter(self.instrs)

    def __str__(self) -> str:
        return "; ".join(str(ins) for ins in self.instrs)


EMPTY = Program()
