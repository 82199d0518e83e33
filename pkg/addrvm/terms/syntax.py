"""
Lambda-terms with address constants, and their parser.

Syntax:
- binders ``\\x.M`` or ``λx.M``; ``\\x y.M`` and ``\\xy.M`` bind several variables
- a variable is one letter followed by digits or primes (``x``, ``x1``, ``K'``),
  so ``S(KI)I`` is S applied to (K I) and I
- constants are ``@name`` (resolved against a name table) or ``#id``
- application is juxtaposition and associates to the left; an abstraction
  extends as far right as possible

Terms compare up to renaming of bound variables.
"""

from dataclasses import dataclass, field
from typing import Mapping, Optional

from lark import Lark, Token, Transformer, UnexpectedInput, v_args
from lark.exceptions import VisitError

from ..core import Address
from ..errors import TermSyntaxError, UnboundVariable


class Term:
    """Base class of lambda-terms; equality is alpha-equivalence."""

    def key(self) -> tuple:
        """Canonical representation with bound variables as de Bruijn indices."""
        cached = self.__dict__.get("_key")
        if cached is None:
            cached = _alpha_key(self, ())
            object.__setattr__(self, "_key", cached)
        return cached

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Term):
            return NotImplemented
        return self is other or self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __str__(self) -> str:
        return show(self)


@dataclass(frozen=True, eq=False)
class Var(Term):
    name: str


@dataclass(frozen=True, eq=False)
class Const(Term):
    """An address used as a constant; ``label`` is the name it was written with."""

    address: Address
    label: Optional[str] = field(default=None, compare=False)


@dataclass(frozen=True, eq=False)
class Abs(Term):
    name: str
    body: Term


@dataclass(frozen=True, eq=False)
class App(Term):
    fun: Term
    arg: Term


def _alpha_key(t: Term, bound: tuple[str, ...]) -> tuple:
    if isinstance(t, Var):
        for distance, name in enumerate(reversed(bound)):
            if name == t.name:
                return ("b", distance)
        return ("f", t.name)
    if isinstance(t, Const):
        return ("c", t.address.id)
    if isinstance(t, Abs):
        return ("l", _alpha_key(t.body, bound + (t.name,)))
    return ("a", _alpha_key(t.fun, bound), _alpha_key(t.arg, bound))


def show(t: Term) -> str:
    """Render a term in the syntax ``parse_term`` reads."""
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return f"@{t.label}" if t.label is not None else str(t.address)
    if isinstance(t, Abs):
        return f"\\{t.name}.{show(t.body)}"
    fun = show(t.fun)
    if isinstance(t.fun, Abs):
        fun = f"({fun})"
    arg = show(t.arg)
    if isinstance(t.arg, (Abs, App)):
        arg = f"({arg})"
    return f"{fun} {arg}"


TERM_GRAMMAR = r"""
    ?start: term

    ?term: abstraction
         | application
         | application abstraction -> apply

    abstraction: LAMBDA VAR+ "." term

    ?application: application atom -> apply
                | atom

    ?atom: VAR      -> variable
         | NAMED    -> named
         | ADDRESS  -> address
         | "(" term ")"

    LAMBDA: "\\" | "λ"
    VAR: /[A-Za-z][0-9']*/
    NAMED: /@[A-Za-z0-9_']+/
    ADDRESS: /#[0-9]+/

    %import common.WS
    %ignore WS
"""

_parser = Lark(TERM_GRAMMAR, parser="lalr")


@v_args(inline=True)
class _TermBuilder(Transformer):
    def __init__(self, constants: Mapping[str, Address]):
        super().__init__()
        self.constants = constants

    def variable(self, tok: Token) -> Term:
        return Var(str(tok))

    def named(self, tok: Token) -> Term:
        name = str(tok)[1:]
        if name not in self.constants:
            raise UnboundVariable(f"@{name}")
        return Const(self.constants[name], name)

    def address(self, tok: Token) -> Term:
        return Const(Address(int(str(tok)[1:])))

    def apply(self, fun: Term, arg: Term) -> Term:
        return App(fun, arg)

    def abstraction(self, _lam: Token, *rest: object) -> Term:
        *names, body = rest
        for name in reversed(names):
            body = Abs(str(name), body)
        return body


def parse_term(text: str, constants: Optional[Mapping[str, Address]] = None) -> Term:
    """
    Parse a lambda-term.

    Args:
        text: Term text, e.g. ``"\\x.\\y.x"`` or ``"(λx.x x)(λx.x x)"``
        constants: Addresses that ``@name`` constants resolve to

    Returns:
        Term: The parsed term

    Raises:
        TermSyntaxError: On malformed text
        UnboundVariable: On an ``@name`` with no entry in ``constants``
    """
    try:
        tree = _parser.parse(text)
    except UnexpectedInput as exc:
        raise TermSyntaxError(f"malformed term {text!r}", getattr(exc, "column", None)) from exc
    try:
        return _TermBuilder(constants or {}).transform(tree)
    except VisitError as exc:
        raise exc.orig_exc from exc
