"""Free variables, capture-avoiding substitution and beta normalization."""

from typing import Optional

from .syntax import Abs, App, Const, Term, Var


def free_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Const):
        return frozenset()
    if isinstance(t, Abs):
        return free_vars(t.body) - {t.name}
    return free_vars(t.fun) | free_vars(t.arg)


def fresh_name(name: str, avoid: frozenset[str]) -> str:
    """Prime ``name`` until it is not in ``avoid``."""
    while name in avoid:
        name += "'"
    return name


def substitute(t: Term, x: str, s: Term) -> Term:
    """
    ``t[x := s]``, renaming binders of ``t`` that would capture free variables of ``s``.

    A renamed binder gets primes appended: ``(\\y.x)[x := y]`` is ``\\y'.y``.
    """
    if isinstance(t, Var):
        return s if t.name == x else t
    if isinstance(t, Const):
        return t
    if isinstance(t, App):
        return App(substitute(t.fun, x, s), substitute(t.arg, x, s))

    if t.name == x or x not in free_vars(t.body):
        return t
    name, body = t.name, t.body
    s_free = free_vars(s)
    if name in s_free:
        renamed = fresh_name(name, s_free | free_vars(body) | {x})
        body = substitute(body, name, Var(renamed))
        name = renamed
    return Abs(name, substitute(body, x, s))


def _contract(t: Term) -> Optional[Term]:
    # leftmost-outermost redex
    if isinstance(t, App):
        if isinstance(t.fun, Abs):
            return substitute(t.fun.body, t.fun.name, t.arg)
        reduct = _contract(t.fun)
        if reduct is not None:
            return App(reduct, t.arg)
        reduct = _contract(t.arg)
        if reduct is not None:
            return App(t.fun, reduct)
        return None
    if isinstance(t, Abs):
        reduct = _contract(t.body)
        if reduct is not None:
            return Abs(t.name, reduct)
    return None


def beta_normalize(t: Term, fuel: int) -> Optional[Term]:
    """
    Normal-order reduce ``t`` for at most ``fuel`` steps.

    Returns:
        The beta normal form, or None if it was not reached within ``fuel`` steps
    """
    if fuel < 0:
        raise ValueError(f"fuel must be >= 0, got {fuel}")
    for _ in range(fuel):
        reduct = _contract(t)
        if reduct is None:
            return t
        t = reduct
    return t if _contract(t) is None else None
