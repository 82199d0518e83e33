"""
Machines, registers, tapes and the structural operations on them.

An addressing machine is a register bank (each cell empty or holding an
address), a valid program, and an input tape of addresses. Machines are
immutable values: every semantic step builds a new one, and structural
equality is the identity the address table interns on.
"""

import dataclasses
from dataclasses import dataclass
from typing import Iterable, Optional, TypeVar

from .program import EMPTY, Load, Program
from .validator import initialized, validate


@dataclass(frozen=True, order=True, slots=True)
class Address:
    """Opaque, totally ordered name of exactly one interned machine."""

    id: int

    def __str__(self) -> str:
        return f"#{self.id}"


Cell = Optional[Address]
Tape = tuple[Address, ...]


@dataclass(frozen=True, slots=True)
class Machine:
    """
    An addressing machine ``<R0..R(r-1), P, T>``.

    Construction checks that the program is valid for the register bank;
    an invalid program raises ``ValidityError``.
    """

    registers: tuple[Cell, ...]
    program: Program = EMPTY
    tape: Tape = ()

    def __post_init__(self) -> None:
        if not isinstance(self.registers, tuple):
            object.__setattr__(self, "registers", tuple(self.registers))
        if not isinstance(self.tape, tuple):
            object.__setattr__(self, "tape", tuple(self.tape))
        validate(self.program, len(self.registers), initialized(self.registers))

    @classmethod
    def trusted(cls, registers: tuple[Cell, ...], program: Program, tape: Tape) -> "Machine":
        """Build a machine whose validity is already established (e.g. by a reduction step)."""
        machine = object.__new__(cls)
        object.__setattr__(machine, "registers", registers)
        object.__setattr__(machine, "program", program)
        object.__setattr__(machine, "tape", tape)
        return machine

    @property
    def r(self) -> int:
        return len(self.registers)

    def references(self) -> Iterable[Address]:
        """Every address stored in a register or on the tape."""
        for cell in self.registers:
            if cell is not None:
                yield cell
        yield from self.tape


M = TypeVar("M")


def append_tape(m: M, t: Iterable[Address]) -> M:
    """
    Return ``m ++ t``: the same registers and program with ``t`` appended to the tape.

    Works for any machine-like value with a ``tape`` field, so holes of
    context machines extend the same way.
    """
    extra = tuple(t)
    if not extra:
        return m
    if type(m) is Machine:
        return Machine.trusted(m.registers, m.program, m.tape + extra)
    return dataclasses.replace(m, tape=m.tape + extra)


def is_stuck(m: Machine) -> bool:
    """True iff the program starts with a Load and the tape is empty."""
    return bool(m.program.instrs) and type(m.program.instrs[0]) is Load and not m.tape


def is_final(m: Machine) -> bool:
    """True iff no head step applies: the program is empty or the machine is stuck."""
    return not m.program.instrs or is_stuck(m)


def indeterminate(n: int) -> Machine:
    """The indeterminate machine x_n: n+1 empty registers, empty program, empty tape."""
    if n < 0:
        raise ValueError(f"indeterminate index must be >= 0, got {n}")
    return Machine.trusted((None,) * (n + 1), EMPTY, ())


def indeterminate_index(m: Machine) -> Optional[int]:
    """Return n when ``m`` is x_n, otherwise None."""
    if m.program.instrs or m.tape or not m.registers:
        return None
    if any(cell is not None for cell in m.registers):
        return None
    return len(m.registers) - 1
