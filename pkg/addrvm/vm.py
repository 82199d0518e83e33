"""
Head reduction: the deterministic execution of a machine.

Provides:
- step: one head step, or None on a final state
- run: iterate step with a fuel budget and cycle detection
- trace: the head-reduction sequence itself
- bigstep / derive: the big-step rules (Stuck), (End), (Load), (App), (Call)

Every state ``run`` visits is interned; a repeated address proves divergence
because head reduction is a function.
"""

from dataclasses import dataclass
from typing import Callable, Optional, Protocol, Union

from .atm import AddressTable
from .core import Address, Machine, append_tape, is_stuck
from .program import App, Load, Program


class Store(Protocol):
    """What head reduction needs from an address table."""

    def lookup(self, a: Address) -> Machine: ...

    def apply(self, a: Address, b: Address) -> Address: ...


# Outcomes

@dataclass(frozen=True)
class Final:
    """Reached a state with the empty program."""

    machine: Machine
    steps: int = 0
    terminated = True

    def __str__(self) -> str:
        return f"final after {self.steps} steps"


@dataclass(frozen=True)
class Stuck:
    """Reached a state waiting on a Load with an empty tape."""

    machine: Machine
    steps: int = 0
    terminated = True

    def __str__(self) -> str:
        return f"stuck after {self.steps} steps"


@dataclass(frozen=True)
class OutOfFuel:
    """Budget exhausted; ``machine`` is the last state reached."""

    machine: Machine
    steps: int = 0
    terminated = False

    def __str__(self) -> str:
        return f"out of fuel after {self.steps} steps"


@dataclass(frozen=True)
class Cycle:
    """
    ``machine`` is the first state that repeats an earlier one.

    ``exact`` is False when the repeat was detected modulo a canonicalization
    of the stored addresses rather than by identical interned addresses.
    """

    machine: Machine
    address: Address
    steps: int = 0
    exact: bool = True
    terminated = False

    def __str__(self) -> str:
        kind = "cycle" if self.exact else "recurrence"
        return f"{kind} at {self.address} after {self.steps} steps"


Outcome = Union[Final, Stuck, OutOfFuel, Cycle]

Canonicalizer = Callable[[Address], Optional[Address]]


def step(m: Machine, store: Store) -> Optional[Machine]:
    """
    Perform one head step.

    Returns:
        The successor state, or None iff ``m`` is final
    """
    instrs = m.program.instrs
    if not instrs:
        return None
    ins = instrs[0]
    kind = type(ins)
    registers = m.registers

    if kind is Load:
        if not m.tape:
            return None
        if ins.i < len(registers):
            registers = registers[:ins.i] + (m.tape[0],) + registers[ins.i + 1:]
        return Machine.trusted(registers, Program.trusted(instrs[1:]), m.tape[1:])

    if kind is App:
        value = store.apply(registers[ins.i], registers[ins.j])
        if ins.k < len(registers):
            registers = registers[:ins.k] + (value,) + registers[ins.k + 1:]
        return Machine.trusted(registers, Program.trusted(instrs[1:]), m.tape)

    return append_tape(store.lookup(registers[ins.i]), m.tape)


def _recurrence_key(m: Machine, canonical: Canonicalizer) -> Optional[tuple]:
    registers = []
    for cell in m.registers:
        if cell is None:
            registers.append(None)
            continue
        c = canonical(cell)
        if c is None:
            return None
        registers.append(c)
    tape = []
    for a in m.tape:
        c = canonical(a)
        if c is None:
            return None
        tape.append(c)
    return tuple(registers), m.program, tuple(tape)


def run(
    m: Machine,
    table: AddressTable,
    fuel: int,
    canonical: Optional[Canonicalizer] = None,
) -> Outcome:
    """
    Head-reduce ``m`` until it is final, repeats, or ``fuel`` steps were taken.

    Args:
        m: Start state
        table: Address table used for App/Call and cycle detection
        fuel: Maximum number of head steps
        canonical: Optional map from an address to a canonical representative;
            when given, two states with the same program and canonically equal
            registers and tape also count as a repeat (``Cycle.exact`` False)

    Returns:
        Outcome: Final, Stuck, Cycle or OutOfFuel
    """
    if fuel < 0:
        raise ValueError(f"fuel must be >= 0, got {fuel}")

    seen: set[Address] = set()
    seen_keys: set[tuple] = set()
    current = m
    steps = 0
    while True:
        if not current.program.instrs:
            return Final(current, steps)
        if is_stuck(current):
            return Stuck(current, steps)

        address = table.intern(current)
        if address in seen:
            return Cycle(current, address, steps)
        seen.add(address)

        if canonical is not None:
            key = _recurrence_key(current, canonical)
            if key is not None:
                if key in seen_keys:
                    return Cycle(current, address, steps, exact=False)
                seen_keys.add(key)

        if steps >= fuel:
            return OutOfFuel(current, steps)
        current = step(current, table)
        steps += 1


def trace(m: Machine, table: AddressTable, fuel: int) -> list[Machine]:
    """
    The head-reduction sequence from ``m``.

    Stops at a final state, after ``fuel`` steps, or just before the first
    state that repeats an earlier one.
    """
    states = [m]
    seen = {table.intern(m)}
    current = m
    for _ in range(fuel):
        nxt = step(current, table)
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
class RuleApplication:
    """One node of a big-step derivation spine: the rule concluding ``machine``."""

    rule: str
    machine: Machine


def derive(
    m: Machine,
    table: AddressTable,
    fuel: int,
) -> tuple[Outcome, tuple[RuleApplication, ...]]:
    """
    Build the derivation of ``m ⇓ V`` from the big-step rules.

    Each rule has at most one premise about a machine, so the derivation is a
    spine and is built bottom-up in a loop. ``fuel`` bounds the derivation
    height: (Load), (App) and (Call) each consume one unit, the axioms
    (Stuck) and (End) close the spine for free.

    Returns:
        The outcome (Final/Stuck with V, or Cycle/OutOfFuel) and the spine,
        conclusion first
    """
    if fuel < 0:
        raise ValueError(f"fuel must be >= 0, got {fuel}")

    spine: list[RuleApplication] = []
    seen: set[Address] = set()
    current = m
    height = 0
    while True:
        instrs = current.program.instrs
        if not instrs:
            spine.append(RuleApplication("End", current))
            return Final(current, height), tuple(spine)
        ins = instrs[0]
        kind = type(ins)
        if kind is Load and not current.tape:
            spine.append(RuleApplication("Stuck", current))
            return Stuck(current, height), tuple(spine)

        address = table.intern(current)
        if address in seen:
            return Cycle(current, address, height), tuple(spine)
        seen.add(address)
        if height >= fuel:
            return OutOfFuel(current, height), tuple(spine)

        registers = current.registers
        rest = Program.trusted(instrs[1:])
        if kind is Load:
            # premise: <R[i := a], P', T'> ⇓ V
            if ins.i < len(registers):
                registers = registers[:ins.i] + (current.tape[0],) + registers[ins.i + 1:]
            premise = Machine.trusted(registers, rest, current.tape[1:])
            rule = "Load"
        elif kind is App:
            # premise: <R[k := R_i . R_j], P', T> ⇓ V
            a = table.apply(registers[ins.i], registers[ins.j])
            if ins.k < len(registers):
                registers = registers[:ins.k] + (a,) + registers[ins.k + 1:]
            premise = Machine.trusted(registers, rest, current.tape)
            rule = "App"
        else:
            # premise: lookup(R_i) ++ T ⇓ V
            premise = append_tape(table.lookup(registers[ins.i]), current.tape)
            rule = "Call"

        spine.append(RuleApplication(rule, current))
        current = premise
        height += 1


def bigstep(m: Machine, table: AddressTable, fuel: int) -> Outcome:
    """Evaluate ``m`` with the big-step rules; on success the outcome carries V with m ⇓ V."""
    outcome, _ = derive(m, table, fuel)
    return outcome
