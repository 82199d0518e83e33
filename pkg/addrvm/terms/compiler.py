"""
Compilation of lambda-terms to addressing machines.

Under a context of n variables a term becomes a machine that first loads
its n arguments:

- variable number i (1-based, last occurrence wins) is a projection Pr(i, n)
- a constant address a is Cons(a, n), which discards its n arguments
- an application M N stores #M and #N in registers n and n+1, and Apply_n
  feeds both the arguments before applying one to the other
- an abstraction is the body compiled under the extended context

A closed term needs no arguments, so its machine runs as is.
"""

import threading
import weakref
from typing import Mapping, Sequence

from ..atm import AddressTable
from ..core import Address, Machine, append_tape
from ..errors import UnboundVariable
from ..program import App as AppInstr
from ..program import Call, Load, Program
from ..utils.logging import get_logger
from .operations import free_vars
from .syntax import Abs, App, Const, Term, Var

logger = get_logger(__name__)


def pr(i: int, n: int) -> Machine:
    """
    The projection onto argument ``i`` of ``n`` (1 <= i <= n).

    Loads every argument but the i-th into register 1, which does not exist,
    so only argument i lands in register 0; then calls it.
    """
    if not 1 <= i <= n:
        raise ValueError(f"projection index {i} out of range 1..{n}")
    instrs = [Load(1)] * (i - 1) + [Load(0)] + [Load(1)] * (n - i) + [Call(0)]
    return Machine.trusted((None,), Program.trusted(tuple(instrs)), ())


def cons(a: Address, n: int) -> Machine:
    """The machine that discards ``n`` arguments and continues as ``a``."""
    instrs = [Load(1)] * n + [Call(0)]
    return Machine.trusted((a,), Program.trusted(tuple(instrs)), ())


def apply_program(n: int) -> Program:
    """
    Apply_n: load n arguments into registers 0..n-1, feed them to the
    machines in registers n and n+1, and call the first on the second.
    """
    instrs: list = [Load(k) for k in range(n)]
    instrs += [AppInstr(n, k, n) for k in range(n)]
    instrs += [AppInstr(n + 1, k, n + 1) for k in range(n)]
    instrs += [AppInstr(n, n + 1, n + 2), Call(n + 2)]
    return Program.trusted(tuple(instrs))


def application_machine(fun: Address, arg: Address, n: int) -> Machine:
    """The machine running Apply_n with ``fun`` in register n and ``arg`` in n+1."""
    return Machine.trusted((None,) * n + (fun, arg, None), apply_program(n), ())


_memos: "weakref.WeakKeyDictionary[AddressTable, dict[tuple[Term, tuple[str, ...]], Machine]]" = (
    weakref.WeakKeyDictionary()
)
_memos_lock = threading.Lock()


def _memo_for(table: AddressTable) -> dict[tuple[Term, tuple[str, ...]], Machine]:
    with _memos_lock:
        return _memos.setdefault(table, {})


def compile_term(t: Term, ctx: Sequence[str], table: AddressTable) -> Machine:
    """
    Compile ``t`` under the variable context ``ctx``.

    Subterm machines are interned into ``table``; results are memoized per
    table up to renaming of bound variables.

    Raises:
        UnboundVariable: If ``t`` has a free variable missing from ``ctx``
        DanglingAddress: If a constant names an address the table never issued
    """
    ctx = tuple(ctx)
    missing = free_vars(t) - set(ctx)
    if missing:
        raise UnboundVariable(sorted(missing)[0])
    return _compile(t, ctx, table, _memo_for(table))


def _compile(
    t: Term,
    ctx: tuple[str, ...],
    table: AddressTable,
    memo: dict[tuple[Term, tuple[str, ...]], Machine],
) -> Machine:
    key = (t, ctx)
    cached = memo.get(key)
    if cached is not None:
        return cached

    n = len(ctx)
    if isinstance(t, Var):
        index = n - ctx[::-1].index(t.name)
        machine = pr(index, n)
    elif isinstance(t, Const):
        table.lookup(t.address)
        machine = cons(t.address, n)
    elif isinstance(t, Abs):
        machine = _compile(t.body, ctx + (t.name,), table, memo)
    else:
        fun = table.intern(_compile(t.fun, ctx, table, memo))
        arg = table.intern(_compile(t.arg, ctx, table, memo))
        machine = application_machine(fun, arg, n)

    memo[key] = machine
    return machine


def interpret(t: Term, valuation: Mapping[str, Address], table: AddressTable) -> Address:
    """
    The address denoting ``t`` under ``valuation``.

    Free variables are taken in sorted order as the context; the compiled
    machine gets their values on its tape.

    Raises:
        UnboundVariable: If a free variable of ``t`` has no value
    """
    ctx = tuple(sorted(free_vars(t)))
    for name in ctx:
        if name not in valuation:
            raise UnboundVariable(name)
    machine = compile_term(t, ctx, table)
    address = table.intern(append_tape(machine, [valuation[name] for name in ctx]))
    logger.debug("term interpreted", term=str(t), address=str(address), context=list(ctx))
    return address
