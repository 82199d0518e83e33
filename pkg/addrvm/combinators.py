"""
The standard machines: K, S, I, D, O, K', 1 and the indeterminates x_n.

Programs write a non-existing register as the register count ``r`` itself.

    K  = <_, Load 0; Load 1; Call 0, []>                 first projection
    S  = <_ _ _, Load 0..2; App 0 2 0; App 1 2 1; App 0 1 2; Call 2, []>
    I  = S ++ [#K, #K]                                   identity
    D  = <_, Load 0; App 0 0 0; Call 0, []>              self-application
    O  = D ++ [#D]                                       loops forever
    K' = <_ _, Load 0; Load 1; Call 0, []>               K with a second register
    1  = <_ _, Load 0; Load 1; App 0 1 0; Call 0, []>    one-step application
"""

from dataclasses import dataclass

from .atm import AddressTable
from .core import Address, Machine, append_tape, indeterminate
from .program import App, Call, Load, Program

K_PROGRAM = Program((Load(0), Load(1), Call(0)))
S_PROGRAM = Program((Load(0), Load(1), Load(2), App(0, 2, 0), App(1, 2, 1), App(0, 1, 2), Call(2)))
D_PROGRAM = Program((Load(0), App(0, 0, 0), Call(0)))
ONE_PROGRAM = Program((Load(0), Load(1), App(0, 1, 0), Call(0)))

K = Machine((None,), K_PROGRAM)
S = Machine((None, None, None), S_PROGRAM)
D = Machine((None,), D_PROGRAM)
K_PRIME = Machine((None, None), K_PROGRAM)
ONE = Machine((None, None), ONE_PROGRAM)

BUILTIN_INDETERMINATES = 4


@dataclass(frozen=True)
class Library:
    """Addresses of the standard machines in one table."""

    K: Address
    S: Address
    I: Address
    D: Address
    O: Address
    K_prime: Address
    one: Address
    indeterminates: tuple[Address, ...]

    def x(self, n: int) -> Address:
        return self.indeterminates[n]

    def names(self) -> dict[str, Address]:
        """Builtin names in installation order, as session files see them."""
        named = {f"x{n}": a for n, a in enumerate(self.indeterminates)}
        named.update({
            "K": self.K,
            "S": self.S,
            "I": self.I,
            "D": self.D,
            "O": self.O,
            "K'": self.K_prime,
            "1": self.one,
        })
        return named


def install(table: AddressTable, indeterminates: int = BUILTIN_INDETERMINATES) -> Library:
    """
    Intern the standard machines into ``table``.

    Installation order is fixed (x0..x(n-1), K, S, I, D, O, K', 1), so a fresh
    table always gives them the same ids.
    """
    xs = tuple(table.intern(indeterminate(n)) for n in range(indeterminates))
    k = table.intern(K)
    s = table.intern(S)
    i = table.intern(append_tape(S, (k, k)))
    d = table.intern(D)
    o = table.intern(append_tape(D, (d,)))
    return Library(
        K=k,
        S=s,
        I=i,
        D=d,
        O=o,
        K_prime=table.intern(K_PRIME),
        one=table.intern(ONE),
        indeterminates=xs,
    )
