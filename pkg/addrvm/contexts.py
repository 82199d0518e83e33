"""
Context machines: machines with holes, plugging, and underlined reduction.

An extended machine is either a hole ``xi ++ T`` or an ordinary machine whose
registers and tape may hold extended addresses. Extended addresses are
issued by an ``ExtendedTable`` layered over a base ``AddressTable``: a
machine that mentions no extended address is interned in the base table,
so base addresses mean the same thing on both levels and the two id spaces
never overlap.

Provides:
- occ: number of hole occurrences reachable from an extended machine
- plug: substitute a base machine for every hole
- underlined_step / underlined_trace: head reduction where a hole in head
  position becomes the plugged machine
- correspondence_check: plugging the underlined trace gives the head trace
  of the plugged machine
"""

import threading
from dataclasses import dataclass
from typing import Container, Iterable, Optional, Union

from .atm import AddressTable
from .core import Address, Machine, Tape, append_tape, is_final
from .errors import DanglingAddress
from .textual import format_machine, format_refs
from .utils.logging import get_logger
from .vm import step

logger = get_logger(__name__)


@dataclass(frozen=True, order=True)
class ExtAddress(Address):
    """Address of an extended machine; never equal to a base Address."""

    def __str__(self) -> str:
        return f"&{self.id}"


@dataclass(frozen=True)
class Hole:
    """The hole with arguments: ``xi ++ tape``."""

    tape: Tape = ()

    def __post_init__(self) -> None:
        if not isinstance(self.tape, tuple):
            object.__setattr__(self, "tape", tuple(self.tape))

    def references(self) -> Iterable[Address]:
        return iter(self.tape)


ExtendedMachine = Union[Hole, Machine]


def format_extended(x: ExtendedMachine) -> str:
    if isinstance(x, Hole):
        return f"xi ++ {format_refs(x.tape)}"
    return format_machine(x)


def is_extended(x: ExtendedMachine) -> bool:
    """True if ``x`` is a hole or mentions an extended address."""
    return isinstance(x, Hole) or any(type(a) is ExtAddress for a in x.references())


class ExtendedTable:
    """
    Interner for extended machines, layered over a base table.

    Attributes:
        base: The base table; machines without extended addresses live there
    """

    def __init__(self, base: AddressTable):
        self.base = base
        self._forward: list[ExtendedMachine] = []
        self._backward: dict[ExtendedMachine, ExtAddress] = {}
        self._lock = threading.RLock()

    def __len__(self) -> int:
        return len(self._forward)

    def is_issued(self, a: object) -> bool:
        if type(a) is ExtAddress:
            return 0 <= a.id < len(self._forward)
        return self.base.is_issued(a)

    def intern(self, x: ExtendedMachine) -> Address:
        """Return the address of ``x``: a base Address unless ``x`` is extended."""
        if not is_extended(x):
            return self.base.intern(x)
        found = self._backward.get(x)
        if found is not None:
            return found
        with self._lock:
            found = self._backward.get(x)
            if found is not None:
                return found
            for ref in x.references():
                if not self.is_issued(ref):
                    raise DanglingAddress(ref)
            address = ExtAddress(len(self._forward))
            self._forward.append(x)
            self._backward[x] = address
            return address

    def lookup(self, a: Address) -> ExtendedMachine:
        if type(a) is ExtAddress:
            if not 0 <= a.id < len(self._forward):
                raise DanglingAddress(a)
            return self._forward[a.id]
        return self.base.lookup(a)

    def apply(self, a: Address, b: Address) -> Address:
        if not self.is_issued(b):
            raise DanglingAddress(b)
        return self.intern(append_tape(self.lookup(a), (b,)))


def _post_order(roots: Iterable[Address], table: ExtendedTable, done: Container[Address]) -> list[ExtAddress]:
    """Extended addresses reachable from ``roots`` and not in ``done``, every one after those it stores."""
    order: list[ExtAddress] = []
    placed: set[ExtAddress] = set()
    pending: list[tuple[ExtAddress, bool]] = [
        (a, False) for a in roots if type(a) is ExtAddress and a not in done
    ]
    while pending:
        a, expanded = pending.pop()
        if a in placed:
            continue
        if expanded:
            placed.add(a)
            order.append(a)
            continue
        pending.append((a, True))
        pending.extend(
            (ref, False)
            for ref in table.lookup(a).references()
            if type(ref) is ExtAddress and ref not in done and ref not in placed
        )
    return order


def occ(x: ExtendedMachine, table: ExtendedTable) -> int:
    """
    Count the holes in ``x``, following extended addresses.

    Every occurrence counts, so an address mentioned twice contributes twice.
    Base addresses never reach a hole.
    """
    counts: dict[Address, int] = {}

    def count(y: ExtendedMachine) -> int:
        holes = 1 if isinstance(y, Hole) else 0
        return holes + sum(counts.get(a, 0) for a in y.references())

    for a in _post_order(x.references(), table, counts):
        counts[a] = count(table.lookup(a))
    return count(x)


class Plugger:
    """Plug one base machine into contexts of one table, memoizing per extended address."""

    def __init__(self, table: ExtendedTable, m: Machine):
        if is_extended(m):
            raise ValueError("only a base machine can be plugged into a context")
        self.table = table
        self.m = m
        self._memo: dict[Address, Address] = {}

    def plug(self, x: ExtendedMachine) -> Machine:
        for a in _post_order(x.references(), self.table, self._memo):
            self._memo[a] = self.table.base.intern(self._plug_shallow(self.table.lookup(a)))
        return self._plug_shallow(x)

    def plug_ref(self, a: Address) -> Address:
        if type(a) is not ExtAddress:
            return a
        if a not in self._memo:
            self._memo[a] = self.table.base.intern(self.plug(self.table.lookup(a)))
        return self._memo[a]

    def _plug_shallow(self, x: ExtendedMachine) -> Machine:
        # every extended address x stores is already in the memo
        if isinstance(x, Hole):
            return append_tape(self.m, [self._memo.get(a, a) for a in x.tape])
        if not is_extended(x):
            return x
        registers = tuple(None if cell is None else self._memo.get(cell, cell) for cell in x.registers)
        return Machine.trusted(registers, x.program, tuple(self._memo.get(a, a) for a in x.tape))


def plug(c: ExtendedMachine, m: Machine, table: ExtendedTable) -> Machine:
    """
    ``c[m]``: replace every hole of ``c`` by ``m``.

    Plugged submachines are interned in the base table; a context without
    holes is returned unchanged.
    """
    return Plugger(table, m).plug(c)


def underlined_step(c: ExtendedMachine, m: Machine, table: ExtendedTable) -> Optional[ExtendedMachine]:
    """
    One ``m``-underlined head step.

    ``xi ++ T`` steps to ``m ++ T``; any other state takes an ordinary head
    step over extended addresses.

    Returns:
        The successor, or None iff ``c`` is a final ordinary machine
    """
    if isinstance(c, Hole):
        return append_tape(m, c.tape)
    return step(c, table)


def underlined_trace(c: ExtendedMachine, m: Machine, table: ExtendedTable, fuel: int) -> list[ExtendedMachine]:
    """The underlined reduction sequence from ``c``; stops when final, repeating, or after ``fuel`` steps."""
    states = [c]
    seen = {table.intern(c)}
    current = c
    for _ in range(fuel):
        nxt = underlined_step(current, m, table)
        if nxt is None:
            break
        address = table.intern(nxt)
        if address in seen:
            break
        seen.add(address)
        states.append(nxt)
        current = nxt
    return states


@dataclass(frozen=True)
class CorrespondenceStep:
    """One underlined step and the base state its plugging lands on."""

    context: ExtendedMachine
    plugged: Machine
    head_steps: int


def correspondence_trace(
    c: ExtendedMachine,
    m: Machine,
    table: ExtendedTable,
    fuel: int,
) -> tuple[bool, list[CorrespondenceStep]]:
    """
    Run ``c`` underlined by ``m`` next to the head reduction of ``c[m]``.

    A hole step leaves the plugged state unchanged (0 head steps); every
    other underlined step must match exactly one head step of the plugged
    machine. At the end both sides must agree on being final.

    Returns:
        (agreed, steps): ``agreed`` is False at the first mismatch; ``steps``
        pairs every underlined state visited with its plugged counterpart
    """
    if fuel < 0:
        raise ValueError(f"fuel must be >= 0, got {fuel}")
    base = table.base
    plugger = Plugger(table, m)
    current = c
    plugged = plugger.plug(c)
    steps = [CorrespondenceStep(current, plugged, 0)]
    for _ in range(fuel):
        nxt = underlined_step(current, m, table)
        if nxt is None:
            return is_final(plugged), steps
        if isinstance(current, Hole):
            expected, head_steps = plugged, 0
        else:
            expected, head_steps = step(plugged, base), 1
            if expected is None:
                return False, steps
        if base.intern(plugger.plug(nxt)) != base.intern(expected):
            logger.debug("correspondence mismatch", step=len(steps), context=format_extended(nxt))
            return False, steps
        current, plugged = nxt, expected
        steps.append(CorrespondenceStep(current, plugged, head_steps))
    return True, steps


def correspondence_check(c: ExtendedMachine, m: Machine, table: ExtendedTable, fuel: int) -> bool:
    """
    True iff plugging ``m`` commutes with reduction for ``fuel`` underlined steps.

    A run that is still going when fuel runs out counts as verified for the
    prefix it covered.
    """
    agreed, _ = correspondence_trace(c, m, table, fuel)
    return agreed
