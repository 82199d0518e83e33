"""Lambda-terms, their parser and their compilation to machines."""

from .compiler import apply_program, application_machine, compile_term, cons, interpret, pr
from .operations import beta_normalize, free_vars, substitute
from .syntax import Abs, App, Const, Term, Var, parse_term

__all__ = [
    "Term",
    "Var",
    "Const",
    "Abs",
    "App",
    "parse_term",
    "free_vars",
    "substitute",
    "beta_normalize",
    "pr",
    "cons",
    "apply_program",
    "application_machine",
    "compile_term",
    "interpret",
]
