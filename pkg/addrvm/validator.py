"""
Program grammar check and the validity judgment.

``parse_program`` turns program text into a Program; ``validate`` decides
whether a program only reads registers that are initialized, given the
register count and the set of initially non-empty registers. The judgment is
syntax-directed, so one left-to-right pass suffices.
"""

from typing import AbstractSet, Iterable, Sequence

from lark import Lark, Token, Transformer, UnexpectedInput, v_args

from .errors import ProgramSyntaxError, ValidityError
from .program import App, Call, Instruction, Load, Program, check_shape

PROGRAM_GRAMMAR = r"""
    start: (instruction (";" instruction)* ";"?)?

    instruction: LOAD INDEX            -> load
               | APP INDEX INDEX INDEX -> app
               | CALL INDEX            -> call

    LOAD: "Load"
    APP: "App"
    CALL: "Call"
    INDEX: /[0-9]+/

    %import common.WS
    %ignore WS
"""

_parser = Lark(PROGRAM_GRAMMAR, parser="lalr")

InitializedSet = frozenset


@v_args(inline=True)
class _ProgramBuilder(Transformer):
    def load(self, keyword: Token, i: Token) -> tuple[int, Instruction]:
        return keyword.column, Load(int(i))

    def app(self, keyword: Token, i: Token, j: Token, k: Token) -> tuple[int, Instruction]:
        return keyword.column, App(int(i), int(j), int(k))

    def call(self, keyword: Token, i: Token) -> tuple[int, Instruction]:
        return keyword.column, Call(int(i))

    def start(self, *items: tuple[int, Instruction]) -> list[tuple[int, Instruction]]:
        return list(items)


def parse_program(text: str) -> Program:
    """
    Parse program text such as ``"Load 0; App 0 1 2; Call 2"``.

    Args:
        text: Instructions separated by semicolons; whitespace-insensitive

    Returns:
        Program: The instructions in source order ("" gives the empty program)

    Raises:
        ProgramSyntaxError: On unknown tokens, or Loads/Apps/Calls out of order
    """
    try:
        tree = _parser.parse(text)
    except UnexpectedInput as exc:
        raise ProgramSyntaxError("malformed program", getattr(exc, "column", None)) from exc

    located = _ProgramBuilder().transform(tree)
    instrs = tuple(ins for _, ins in located)
    try:
        check_shape(instrs)
    except ProgramSyntaxError as exc:
        column = located[exc.index][0] if exc.index is not None else None
        raise ProgramSyntaxError(exc.detail, position=column, index=exc.index) from exc
    return Program.trusted(instrs)


def initialized(registers: Sequence[object]) -> InitializedSet:
    """Indices of the non-empty cells of a register bank."""
    return InitializedSet(i for i, cell in enumerate(registers) if cell is not None)


def _read(index: int, register: int, r: int, init: AbstractSet[int]) -> None:
    if register >= r:
        raise ValidityError(index, register, "nonexistent")
    if register not in init:
        raise ValidityError(index, register, "uninitialized")


def validate(program: Program, r: int, init: Iterable[int]) -> InitializedSet:
    """
    Check ``init |=^r program``.

    Loads and Apps into an existing register add it to the initialized set;
    writes to indices >= r are discarded and never affect validity. App reads
    its first two operands and Call reads its register.

    Args:
        program: A grammatical program
        r: Number of registers
        init: Indices initialized before the program starts, each < r

    Returns:
        InitializedSet: Registers initialized once the program has run

    Raises:
        ValidityError: At the first read of an uninitialized or non-existing register
        ValueError: If init names a register >= r
    """
    current = set(init)
    if any(i < 0 or i >= r for i in current):
        raise ValueError(f"initialized set {sorted(current)} exceeds {r} registers")

    for index, ins in enumerate(program.instrs):
        if type(ins) is Load:
            if ins.i < r:
                current.add(ins.i)
        elif type(ins) is App:
            _read(index, ins.i, r, current)
            _read(index, ins.j, r, current)
            if ins.k < r:
                current.add(ins.k)
        else:
            _read(index, ins.i, r, current)
    return InitializedSet(current)


def is_valid(program: Program, r: int, init: Iterable[int]) -> bool:
    """Boolean form of ``validate``."""
    try:
        validate(program, r, init)
    except ValidityError:
        return False
    return True
