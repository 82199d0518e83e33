"""
addrvm: addressing machines, their compiler from lambda-terms, and
equivalence checkers.

A machine computes only by loading addresses from its tape, applying
addresses to addresses, and calling the machine an address names. Machines
are interned in an ``AddressTable``, which gives every distinct machine one
address.
"""

from .atm import AddressTable
from .combinators import Library, install
from .core import Address, Machine, append_tape, indeterminate, is_final, is_stuck
from .errors import AddrVMError, InputError, InternalError
from .program import App, Call, Load, Program
from .reduction import deep_normalize, eval_equiv
from .validator import parse_program, validate
from .verdicts import Distinct, Equiv, EquivUpTo, Unknown
from .vm import Cycle, Final, OutOfFuel, Stuck, bigstep, run, step, trace

__version__ = "1.0.0"

__all__ = [
    "Address",
    "AddressTable",
    "Machine",
    "Program",
    "Load",
    "App",
    "Call",
    "Library",
    "install",
    "append_tape",
    "indeterminate",
    "is_final",
    "is_stuck",
    "parse_program",
    "validate",
    "step",
    "run",
    "trace",
    "bigstep",
    "Final",
    "Stuck",
    "Cycle",
    "OutOfFuel",
    "deep_normalize",
    "eval_equiv",
    "Equiv",
    "EquivUpTo",
    "Distinct",
    "Unknown",
    "AddrVMError",
    "InputError",
    "InternalError",
]
