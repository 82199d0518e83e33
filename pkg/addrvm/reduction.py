"""
Full reduction, deep normalization and evaluation equivalence.

The full reduction adds inner steps to head reduction: a register or tape
entry holding ``a`` may be replaced by the address of a reduct of
``lookup(a)``. It is confluent, so two addresses are evaluation equivalent
iff they have a common reduct, iff (when both normalize) their normal forms
coincide. Normal forms are found by head-running a machine to a final state
and then normalizing every stored address; a final state stays final under
inner steps, so this is complete.

Stored addresses only refer to addresses issued before them, so every walk
over nested machines here uses an explicit stack and terminates at any
nesting depth.
"""

import threading
import weakref
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

from .atm import AddressTable
from .config import get_settings
from .core import Address, Machine
from .errors import InternalError
from .utils.logging import get_logger
from .verdicts import Conflict, Distinct, Equiv, Path, Unknown, Verdict
from .vm import Cycle, run, step, trace

logger = get_logger(__name__)

SuccessorMemo = dict[Address, tuple[Address, ...]]
Position = tuple[str, int]


# Positions inside a machine

def _positions(m: Machine) -> list[tuple[Position, Address]]:
    """Occupied registers, then tape entries, with their addresses."""
    out = [(("R", i), cell) for i, cell in enumerate(m.registers) if cell is not None]
    out.extend((("T", i), a) for i, a in enumerate(m.tape))
    return out


def _at(m: Machine, pos: Position) -> Address:
    kind, i = pos
    cell = m.registers[i] if kind == "R" else m.tape[i]
    assert cell is not None
    return cell


def _replace(m: Machine, pos: Position, a: Address) -> Machine:
    kind, i = pos
    if kind == "R":
        return Machine.trusted(m.registers[:i] + (a,) + m.registers[i + 1:], m.program, m.tape)
    return Machine.trusted(m.registers, m.program, m.tape[:i] + (a,) + m.tape[i + 1:])


def _shape(m: Machine) -> tuple:
    return m.program, tuple(cell is None for cell in m.registers), len(m.tape)


# Full reduction

def _inner(m: Machine, reducts_of: Callable[[Address], tuple[Address, ...]]) -> list[Machine]:
    return [
        _replace(m, pos, reduct)
        for pos, a in _positions(m)
        for reduct in reducts_of(a)
    ]


def _address_reducts(a: Address, table: AddressTable, nested: bool, memo: SuccessorMemo) -> tuple[Address, ...]:
    cached = memo.get(a)
    if cached is not None:
        return cached
    if not nested:
        nxt = step(table.lookup(a), table)
        reducts = () if nxt is None else (table.intern(nxt),)
        memo[a] = reducts
        return reducts

    # post-order over the stored addresses not yet in the memo
    pending = [a]
    while pending:
        top = pending[-1]
        if top in memo:
            pending.pop()
            continue
        machine = table.lookup(top)
        missing = [ref for ref in machine.references() if ref not in memo]
        if missing:
            pending.extend(missing)
            continue
        pending.pop()
        successors = []
        head = step(machine, table)
        if head is not None:
            successors.append(head)
        successors.extend(_inner(machine, memo.__getitem__))
        memo[top] = tuple(table.intern(n) for n in successors)
    return memo[a]


def inner_successors(
    m: Machine,
    table: AddressTable,
    nested: bool = True,
    memo: Optional[SuccessorMemo] = None,
) -> list[Machine]:
    """
    All one-step inner reducts of ``m``, registers first, then tape positions.

    Args:
        nested: Reduce stored machines with the full reduction (inner steps
            at any depth). When False only head steps of stored machines count.
        memo: Optional per-address cache shared across calls
    """
    memo = {} if memo is None else memo
    return _inner(m, lambda a: _address_reducts(a, table, nested, memo))


def c_successors(
    m: Machine,
    table: AddressTable,
    nested: bool = True,
    memo: Optional[SuccessorMemo] = None,
) -> list[Machine]:
    """
    All one-step reducts of ``m``: the head step (if any), then the inner steps.

    With ``nested=False`` only the head step of each stored machine is
    considered, giving at most one reduct per register and tape position.
    """
    out: list[Machine] = []
    head = step(m, table)
    if head is not None:
        out.append(head)
    out.extend(inner_successors(m, table, nested=nested, memo=memo))
    return out


# Deep normalization

@dataclass(frozen=True, eq=False)
class DeepForm:
    """
    The normal form of ``source``, or the part of it that could be computed.

    Attributes:
        source: The address that was normalized
        head: Head-final state reached from lookup(source); None if the head run
            was cut by fuel or a cycle
        registers: Normal forms of the head state's registers (None for empty cells)
        tape: Normal forms of the head state's tape entries
        complete: True iff this is a normal form of the full reduction
        reason: Why normalization stopped ("fuel" or "cycle"); None when complete
        machine: The normal machine (only when complete)
        address: Address of the normal machine (only when complete)
    """

    source: Address
    head: Optional[Machine]
    registers: tuple[Optional["DeepForm"], ...] = ()
    tape: tuple["DeepForm", ...] = ()
    complete: bool = False
    reason: Optional[str] = None
    machine: Optional[Machine] = None
    address: Optional[Address] = None
    provisional: bool = field(default=False, repr=False)


class Normalizer:
    """
    Memoizing deep normalizer bound to one table and one fuel budget.

    Forms are cached per address. A form that re-enters an address still
    under normalization depends on where it was reached from, so it is
    marked provisional and not cached.
    """

    def __init__(self, table: AddressTable, fuel: int):
        self.table = table
        self.fuel = fuel
        self._cache: dict[Address, DeepForm] = {}
        self._lock = threading.RLock()

    def normalize(self, a: Address) -> DeepForm:
        """Deep-normalize the machine at ``a``."""
        with self._lock:
            return self._normalize(a)

    def canonical(self, a: Address) -> Optional[Address]:
        """Address of the normal form of ``a``, or None if it was not reached."""
        return self.normalize(a).address

    def _normalize(self, root: Address) -> DeepForm:
        cached = self._cache.get(root)
        if cached is not None:
            return cached

        provisional: dict[Address, DeepForm] = {}
        heads: dict[Address, Machine] = {}
        active: set[Address] = set()
        pending = [root]
        while pending:
            a = pending[-1]
            if a in self._cache or a in provisional:
                pending.pop()
                continue

            head = heads.get(a)
            if head is None:
                outcome = run(self.table.lookup(a), self.table, self.fuel)
                if not outcome.terminated:
                    reason = "cycle" if isinstance(outcome, Cycle) else "fuel"
                    self._cache[a] = DeepForm(a, None, reason=reason)
                    pending.pop()
                    continue
                heads[a] = outcome.machine
                active.add(a)
                pending.extend(
                    ref for ref in outcome.machine.references()
                    if ref not in self._cache and ref not in provisional and ref not in active
                )
                continue

            pending.pop()
            active.discard(a)
            form = self._assemble(a, head, provisional, active)
            if form.provisional:
                provisional[a] = form
            else:
                self._cache[a] = form

        return self._cache.get(root) or provisional[root]

    def _child(self, a: Address, provisional: dict[Address, DeepForm], active: set[Address]) -> DeepForm:
        form = self._cache.get(a) or provisional.get(a)
        if form is not None:
            return form
        if a in active:
            return DeepForm(a, None, reason="cycle", provisional=True)
        raise InternalError(f"stored address {a} was never normalized")

    def _assemble(
        self,
        a: Address,
        head: Machine,
        provisional: dict[Address, DeepForm],
        active: set[Address],
    ) -> DeepForm:
        registers = tuple(
            None if cell is None else self._child(cell, provisional, active) for cell in head.registers
        )
        tape = tuple(self._child(item, provisional, active) for item in head.tape)
        children = [f for f in registers if f is not None] + list(tape)
        is_provisional = any(f.provisional for f in children)
        incomplete = [f for f in children if not f.complete]
        if incomplete:
            return DeepForm(
                a, head, registers, tape,
                complete=False,
                reason=incomplete[0].reason,
                provisional=is_provisional,
            )

        normal = Machine.trusted(
            tuple(None if f is None else f.address for f in registers),
            head.program,
            tuple(f.address for f in tape),
        )
        return DeepForm(
            a, head, registers, tape,
            complete=True,
            machine=normal,
            address=self.table.intern(normal),
            provisional=is_provisional,
        )


_normalizers: "weakref.WeakKeyDictionary[AddressTable, dict[int, Normalizer]]" = weakref.WeakKeyDictionary()
_normalizers_lock = threading.Lock()


def normalizer_for(table: AddressTable, fuel: int) -> Normalizer:
    """The shared normalizer for ``table`` at budget ``fuel``."""
    with _normalizers_lock:
        per_fuel = _normalizers.setdefault(table, {})
        normalizer = per_fuel.get(fuel)
        if normalizer is None:
            normalizer = per_fuel[fuel] = Normalizer(table, fuel)
        return normalizer


def deep_normalize(m: Machine, table: AddressTable, fuel: int) -> DeepForm:
    """
    Head-run ``m`` to a final state, then deep-normalize every stored address.

    The form is truncated (``complete`` False) when any head run on the way ran
    out of fuel or cycled.
    """
    return normalizer_for(table, fuel).normalize(table.intern(m))


# Evaluation equivalence

def compare_forms(left: DeepForm, right: DeepForm, path: Path = ()) -> list[Conflict]:
    """
    Collect the positions where two (possibly truncated) forms provably differ.

    Only decided information is used: head-final shapes never change under
    further reduction, and complete subforms are unique normal forms.
    Conflicts come out depth-first, registers before tape.
    """
    conflicts: list[Conflict] = []
    pending: list[Union[Conflict, tuple[DeepForm, DeepForm, Path]]] = [(left, right, path)]
    while pending:
        item = pending.pop()
        if isinstance(item, Conflict):
            conflicts.append(item)
            continue
        lf, rf, here = item
        if lf.head is None or rf.head is None:
            continue
        if _shape(lf.head) != _shape(rf.head):
            conflicts.append(Conflict(here, lf.source, rf.source, "shape"))
            continue

        pairs: list[tuple[DeepForm, DeepForm, Path]] = [
            (lc, rc, here + (("R", i),))
            for i, (lc, rc) in enumerate(zip(lf.registers, rf.registers))
            if lc is not None and rc is not None
        ]
        pairs.extend((lc, rc, here + (("T", i),)) for i, (lc, rc) in enumerate(zip(lf.tape, rf.tape)))
        found: list[Union[Conflict, tuple[DeepForm, DeepForm, Path]]] = []
        for lc, rc, where in pairs:
            if lc.source == rc.source:
                continue
            if lc.complete and rc.complete:
                if lc.address != rc.address:
                    found.append(Conflict(where, lc.source, rc.source, "normal forms differ"))
                continue
            found.append((lc, rc, where))
        pending.extend(reversed(found))
    return conflicts


def heads_meet(a: Address, b: Address, table: AddressTable, fuel: int) -> bool:
    """True if the head-reduction sequences of ``a`` and ``b`` share a state."""
    left = {table.intern(s) for s in trace(table.lookup(a), table, fuel)}
    return any(table.intern(s) in left for s in trace(table.lookup(b), table, fuel))


def eval_equiv(a: Address, b: Address, table: AddressTable, fuel: int) -> Verdict:
    """
    Decide evaluation equivalence of ``a`` and ``b`` within ``fuel``.

    Both sides are deep-normalized. Complete normal forms decide the question.
    Otherwise a decided structural conflict gives Distinct, a shared head
    reduct gives Equiv, and anything else is Unknown.

    Raises:
        DanglingAddress: If either address was never issued
    """
    table.lookup(a)
    table.lookup(b)
    if a == b:
        return Equiv()

    normalizer = normalizer_for(table, fuel)
    left = normalizer.normalize(a)
    right = normalizer.normalize(b)

    if left.complete and right.complete:
        if left.address == right.address:
            return Equiv()
        return Distinct(conflicts=tuple(compare_forms(left, right)))

    conflicts = compare_forms(left, right)
    if conflicts:
        return Distinct(conflicts=tuple(conflicts))
    if heads_meet(a, b, table, fuel):
        return Equiv()

    reason = right.reason if left.complete else left.reason
    logger.debug("eval_equiv undecided", left=str(a), right=str(b), reason=reason)
    return Unknown(reason or "fuel")


def lift_related(m: Machine, n: Machine, related: Callable[[Address, Address], bool]) -> bool:
    """
    Lift an address relation to machines.

    Two machines are related when they share the program, the register count,
    the empty-register pattern and the tape length, and every pair of stored
    addresses is related.
    """
    if _shape(m) != _shape(n):
        return False
    for x, y in zip(m.registers, n.registers):
        if x is not None and not related(x, y):
            return False
    return all(related(x, y) for x, y in zip(m.tape, n.tape))


# Confluence and postponement search

def reduction_distance(src: Machine, dst: Machine, table: AddressTable, budget: int) -> Optional[int]:
    """
    Length of a full-reduction path from ``src`` to ``dst`` within ``budget`` steps.

    Only two kinds of path are tried: a head step followed by a path, or
    (when both machines have the same shape) independent paths inside every
    position where they differ. A path found is always real; a missing one
    is not a proof that none exists.

    Returns:
        The shortest such path length, or None if none fits the budget
    """
    if src == dst:
        return 0
    if budget <= 0:
        return None

    best: Optional[int] = None
    if _shape(src) == _shape(dst):
        total: Optional[int] = 0
        for (_, x), (_, y) in zip(_positions(src), _positions(dst)):
            if x == y:
                continue
            assert total is not None
            d = reduction_distance(table.lookup(x), table.lookup(y), table, budget - total)
            if d is None:
                total = None
                break
            total += d
        best = total

    limit = budget - 1 if best is None else best - 2
    if limit >= 0:
        head = step(src, table)
        if head is not None:
            d = reduction_distance(head, dst, table, limit)
            if d is not None:
                best = d + 1
    return best


def _redex(m: Machine, n: Machine, table: AddressTable) -> Union[str, Position, None]:
    """Where the one-step reduct ``n`` of ``m`` was contracted: "head" or a position."""
    if step(m, table) == n:
        return "head"
    if _shape(m) != _shape(n):
        return None
    changed = [pos for (pos, x), (_, y) in zip(_positions(m), _positions(n)) if x != y]
    return changed[0] if len(changed) == 1 else None


def _peak_target(m: Machine, left: Machine, right: Machine, table: AddressTable) -> Optional[Machine]:
    frames: list[tuple[Machine, Position]] = []
    while True:
        if left == right:
            target = left
            break
        at_left, at_right = _redex(m, left, table), _redex(m, right, table)
        if at_left is None or at_right is None or at_left == at_right == "head":
            return None
        if at_left == "head" or at_right == "head":
            # the head step of the inner reduct absorbs the residuals of the other step
            inner = right if at_left == "head" else left
            nxt = step(inner, table)
            if nxt is None:
                return None
            target = nxt
            break
        assert not isinstance(at_left, str) and not isinstance(at_right, str)
        if at_left != at_right:
            target = _replace(left, at_right, _at(right, at_right))
            break
        frames.append((m, at_left))
        m = table.lookup(_at(m, at_left))
        left = table.lookup(_at(left, at_left))
        right = table.lookup(_at(right, at_left))

    for outer, pos in reversed(frames):
        target = _replace(outer, pos, table.intern(target))
    return target


def close_peak(
    m: Machine,
    left: Machine,
    right: Machine,
    table: AddressTable,
    max_steps: Optional[int] = None,
) -> Optional[Machine]:
    """
    Close the peak ``left <- m -> right`` of two one-step reducts.

    Two inner steps at different positions commute; two at the same position
    are closed inside the stored machine; a head step against an inner step
    is closed by the head step of the inner reduct. The proposed common
    reduct is accepted only if ``reduction_distance`` reaches it from both
    sides within ``max_steps``.

    Returns:
        The common reduct, or None if the peak could not be closed
    """
    max_steps = get_settings().confluence_join_steps if max_steps is None else max_steps
    target = _peak_target(m, left, right, table)
    if target is None:
        return None
    if reduction_distance(left, target, table, max_steps) is None:
        return None
    if reduction_distance(right, target, table, max_steps) is None:
        return None
    return target


def _expand(
    frontier: set[Address],
    seen: set[Address],
    table: AddressTable,
    memo: SuccessorMemo,
    room: int,
) -> set[Address]:
    out: set[Address] = set()
    for address in frontier:
        for reduct in c_successors(table.lookup(address), table, memo=memo):
            ra = table.intern(reduct)
            if ra not in seen:
                if len(out) >= room:
                    return out
                seen.add(ra)
                out.add(ra)
    return out


def joinable(
    m: Machine,
    n: Machine,
    table: AddressTable,
    max_steps: Optional[int] = None,
    memo: Optional[SuccessorMemo] = None,
    fuel: Optional[int] = None,
    max_states: Optional[int] = None,
) -> bool:
    """
    Decide whether ``m`` and ``n`` have a common reduct.

    When both deep-normalize within ``fuel`` their normal forms decide it.
    Otherwise a search of ``max_steps`` full-reduction steps on each side
    looks for a shared state, visiting at most ``max_states`` states in all.
    False then only means that no common reduct was found.
    """
    settings = get_settings()
    max_steps = settings.confluence_join_steps if max_steps is None else max_steps
    fuel = settings.recurrence_fuel if fuel is None else fuel
    max_states = settings.confluence_join_states if max_states is None else max_states
    memo = {} if memo is None else memo
    a, b = table.intern(m), table.intern(n)
    if a == b:
        return True

    normalizer = normalizer_for(table, fuel)
    left, right = normalizer.normalize(a), normalizer.normalize(b)
    if left.complete and right.complete:
        return left.address == right.address

    seen_a, seen_b = {a}, {b}
    frontier_a, frontier_b = {a}, {b}
    steps_a = steps_b = 0
    while steps_a < max_steps or steps_b < max_steps:
        room = max_states - len(seen_a) - len(seen_b)
        if room <= 0:
            logger.debug("join search capped", left=str(a), right=str(b), states=max_states)
            return False
        grow_a = steps_a < max_steps and (len(frontier_a) <= len(frontier_b) or steps_b >= max_steps)
        if grow_a:
            frontier_a = _expand(frontier_a, seen_a, table, memo, room)
            steps_a += 1
        else:
            frontier_b = _expand(frontier_b, seen_b, table, memo, room)
            steps_b += 1
        if not seen_a.isdisjoint(seen_b):
            return True
        if not frontier_a and not frontier_b:
            return False
    return False


@dataclass(frozen=True)
class Postponement:
    """How an inner-then-head pair was closed: head steps first, then inner steps."""

    head_steps: int
    inner_steps: int


def find_postponement(
    m: Machine,
    n: Machine,
    table: AddressTable,
    max_inner: Optional[int] = None,
    memo: Optional[SuccessorMemo] = None,
) -> Optional[Postponement]:
    """
    Close the diagram for ``m ->i n ->h n'``: find ``m ->h m' ->>i n'``.

    ``n`` must be an inner reduct of ``m`` that can head-step. When the inner
    step rewrote the register a Call jumps to, the stored machine's own step
    becomes a head step after the jump, so a second head step is also tried.

    Returns:
        The step counts used, or None if no completion exists within the budget
    """
    max_inner = get_settings().postponement_inner_steps if max_inner is None else max_inner
    memo = {} if memo is None else memo
    target_state = step(n, table)
    if target_state is None:
        raise ValueError("the inner reduct cannot head-step")
    target = table.intern(target_state)

    start = step(m, table)
    for head_steps in (1, 2):
        if start is None:
            return None
        found = _inner_distance(start, target, table, max_inner, memo)
        if found is not None:
            return Postponement(head_steps, found)
        start = step(start, table)
    return None


def _inner_distance(
    start: Machine,
    target: Address,
    table: AddressTable,
    limit: int,
    memo: SuccessorMemo,
) -> Optional[int]:
    origin = table.intern(start)
    if origin == target:
        return 0
    seen = {origin}
    queue = deque([(start, 0)])
    while queue:
        machine, distance = queue.popleft()
        if distance >= limit:
            continue
        for reduct in inner_successors(machine, table, memo=memo):
            ra = table.intern(reduct)
            if ra == target:
                return distance + 1
            if ra not in seen:
                seen.add(ra)
                queue.append((reduct, distance + 1))
    return None
