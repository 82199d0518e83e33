"""
Bounded applicative equivalence.

Two machines are applicatively equivalent when they evaluate alike, or are
both stuck and stay equivalent whatever address is fed to them next. The
checker approximates "whatever address" by fresh indeterminates: a machine
that head-reduces to x_n can only be equivalent to machines that also reach
x_n, so feeding both sides the same fresh x_f and watching where they end
up gives sound separations.

Verdicts:
- Distinct carries a Witness: the fresh arguments applied and what each side
  was observed to do. ``replay_witness`` reproduces the observation.
- EquivUpTo(depth) means no observation within ``depth`` fresh arguments
  separated the sides. It is not a proof.
- Unknown when fuel ran out, a side diverged, or the depth was spent.

A stuck side against a divergent one is reported Distinct only with
``strict_distinct``; in that mode divergence is also recognized as a
recurrence of states modulo evaluation, so compiled loops whose tape keeps
growing are caught. Such a recurrence is evidence of divergence, not a
proof: the Distinct verdict names it in its ``reason``, and it never
separates a machine from one that reaches an indeterminate.
"""

from dataclasses import dataclass
from typing import Optional

from ..atm import AddressTable
from ..config import get_settings
from ..core import Address, indeterminate, indeterminate_index
from ..reduction import eval_equiv, normalizer_for
from ..utils.logging import get_logger
from ..verdicts import Distinct, Equiv, EquivUpTo, Unknown, Verdict, Witness
from ..vm import Canonicalizer, Cycle, Final, OutOfFuel, Outcome, Stuck, run
from .base import EquivalenceChecker

logger = get_logger(__name__)

RECURRENCE_BASIS = "recurrence modulo evaluation, assumed divergent"


def fresh_indeterminate(table: AddressTable) -> Address:
    """
    Intern an indeterminate no machine in ``table`` can mention yet.

    x_n has n+1 registers, so taking n as the largest register count in the
    table makes it new; successive calls return distinct addresses.
    """
    with table.lock:
        n = table.max_registers
        address = table.intern(indeterminate(n))
    logger.debug("fresh indeterminate allocated", index=n, address=str(address))
    return address


def observation(outcome: Outcome) -> str:
    """Label what a head run did: ``x<n>``, ``stuck``, ``final``, ``cycle``, ``recurrence`` or ``fuel``."""
    if isinstance(outcome, Final):
        n = indeterminate_index(outcome.machine)
        return "final" if n is None else f"x{n}"
    if isinstance(outcome, Stuck):
        return "stuck"
    if isinstance(outcome, Cycle):
        return "cycle" if outcome.exact else "recurrence"
    return "fuel"


@dataclass
class _Search:
    table: AddressTable
    fuel: int
    depth: int
    canonical: Optional[Canonicalizer]

    def observe(self, a: Address) -> Outcome:
        return run(self.table.lookup(a), self.table, self.fuel, canonical=self.canonical)

    def check(self, a: Address, b: Address, arguments: tuple[Address, ...], depth: int) -> Verdict:
        if a == b:
            return EquivUpTo(self.depth)

        left, right = self.observe(a), self.observe(b)
        witness = Witness(arguments, observation(left), observation(right))
        li = _indeterminate_of(left)
        ri = _indeterminate_of(right)

        if li is not None and ri is not None:
            return EquivUpTo(self.depth) if li == ri else Distinct(witness=witness)
        if li is not None or ri is not None:
            other = right if li is not None else left
            # x_n is only reachable from machines that head-reduce to it
            if other.terminated or (isinstance(other, Cycle) and other.exact):
                return Distinct(witness=witness)
            # a recurrence modulo evaluation does not prove divergence
            return Unknown("cycle" if isinstance(other, Cycle) else "fuel")

        if isinstance(eval_equiv(a, b, self.table, self.fuel), Equiv):
            return EquivUpTo(self.depth)

        if isinstance(left, Stuck) and isinstance(right, Stuck):
            if depth == 0:
                return Unknown("depth")
            x = fresh_indeterminate(self.table)
            return self.check(self.table.apply(a, x), self.table.apply(b, x), arguments + (x,), depth - 1)

        if isinstance(left, OutOfFuel) or isinstance(right, OutOfFuel):
            return Unknown("fuel")
        if isinstance(left, Cycle) and isinstance(right, Cycle):
            return Unknown("cycle")
        if isinstance(left, Cycle) or isinstance(right, Cycle):
            if self.canonical is not None:
                divergent = left if isinstance(left, Cycle) else right
                assert isinstance(divergent, Cycle)
                basis = "exact cycle" if divergent.exact else RECURRENCE_BASIS
                return Distinct(witness=witness, reason=basis)
            return Unknown("cycle")
        # final against stuck, or two finals that evaluate differently
        return Unknown("undecided")


def _indeterminate_of(outcome: Outcome) -> Optional[int]:
    if isinstance(outcome, Final):
        return indeterminate_index(outcome.machine)
    return None


def _canonicalizer(table: AddressTable, strict_distinct: bool) -> Optional[Canonicalizer]:
    if not strict_distinct:
        return None
    return normalizer_for(table, get_settings().recurrence_fuel).canonical


def ae_check(
    a: Address,
    b: Address,
    table: AddressTable,
    fuel: Optional[int] = None,
    depth: Optional[int] = None,
    strict_distinct: Optional[bool] = None,
) -> Verdict:
    """
    Check applicative equivalence of ``a`` and ``b`` up to ``depth`` fresh arguments.

    Args:
        a: Left operand
        b: Right operand
        table: Address table; fresh indeterminates are interned into it
        fuel: Head-step budget per run (defaults to settings.default_fuel)
        depth: Fresh arguments that may be applied (defaults to settings.default_depth)
        strict_distinct: Separate stuck from divergent machines (defaults to
            settings.strict_distinct)

    Returns:
        Verdict: EquivUpTo(depth), Distinct with a witness, or Unknown(reason)

    Raises:
        DanglingAddress: If either address was never issued
    """
    settings = get_settings()
    fuel = settings.default_fuel if fuel is None else fuel
    depth = settings.default_depth if depth is None else depth
    strict = settings.strict_distinct if strict_distinct is None else strict_distinct
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    table.lookup(a)
    table.lookup(b)

    search = _Search(table, fuel, depth, _canonicalizer(table, strict))
    verdict = search.check(a, b, (), depth)
    logger.debug("ae_check finished", left=str(a), right=str(b), verdict=str(verdict))
    return verdict


def replay_witness(
    a: Address,
    b: Address,
    witness: Witness,
    table: AddressTable,
    fuel: Optional[int] = None,
    strict_distinct: Optional[bool] = None,
) -> tuple[str, str]:
    """
    Apply the witness arguments to both sides and observe them again.

    Returns:
        The (left, right) observations; they equal the witness labels when it replays
    """
    settings = get_settings()
    fuel = settings.default_fuel if fuel is None else fuel
    strict = settings.strict_distinct if strict_distinct is None else strict_distinct
    for x in witness.arguments:
        a = table.apply(a, x)
        b = table.apply(b, x)
    search = _Search(table, fuel, 0, _canonicalizer(table, strict))
    return observation(search.observe(a)), observation(search.observe(b))


class ApplicativeChecker(EquivalenceChecker):
    """Bounded applicative equivalence with fresh-indeterminate witnesses."""

    def __init__(
        self,
        table: AddressTable,
        fuel: Optional[int] = None,
        depth: Optional[int] = None,
        strict_distinct: Optional[bool] = None,
    ):
        super().__init__(table, fuel)
        settings = get_settings()
        self.depth = settings.default_depth if depth is None else depth
        self.strict_distinct = settings.strict_distinct if strict_distinct is None else strict_distinct

    @property
    def mode(self) -> str:
        return "ae"

    def check(self, a: Address, b: Address) -> Verdict:
        return ae_check(a, b, self.table, self.fuel, self.depth, self.strict_distinct)
