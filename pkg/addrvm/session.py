"""
Session files: named machines, terms and contexts over one address table.

A session file starts with the header ``addrvm v1`` and defines names top to
bottom; a definition may only refer to names defined before it. Every
session starts with the builtins x0..x3, K, S, I, D, O, K', 1 and the bare
hole ``xi``.

    addrvm v1
    // comments run to the end of the line
    machine P0 { regs = [_, @x0, @x1, _]; prog = "Load 0; App 0 1 2; Call 2"; }
    term SKI = "S(KI)I";
    hole H = [@x1];
    context C { regs = [_, _, _]; prog = "..."; tape = [@xi, @xi, @x3]; }

``@name`` refers to a definition, ``#id`` to a raw address. Term variables
that are not bound by a lambda are looked up as names.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from lark import Lark, Token, Tree, UnexpectedInput

from .atm import AddressTable
from .combinators import Library, install
from .contexts import ExtAddress, ExtendedMachine, ExtendedTable, Hole
from .core import Address, Cell, Machine
from .errors import DanglingAddress, InputError, SessionError, UnboundVariable
from .program import EMPTY
from .terms import interpret, parse_term
from .utils.logging import get_logger
from .validator import parse_program

logger = get_logger(__name__)

SESSION_VERSION = "v1"
HOLE_NAME = "xi"

SESSION_GRAMMAR = r"""
    start: HEADER? _statement*

    _statement: machine_def
              | context_def
              | term_def
              | hole_def

    machine_def: "machine" NAME block
    context_def: "context" NAME block
    term_def: "term" NAME "=" STRING ";"
    hole_def: "hole" NAME "=" ref_list ";"

    block: "{" field* "}"

    field: "regs" "=" cell_list ";"  -> regs_field
         | "prog" "=" STRING ";"     -> prog_field
         | "tape" "=" ref_list ";"   -> tape_field

    cell_list: "[" (cell ("," cell)*)? "]"
    ref_list: "[" (REF ("," REF)*)? "]"

    cell: "_" -> empty_cell
        | REF

    HEADER: /addrvm[ \t]+v[0-9]+/
    NAME: /[A-Za-z0-9][A-Za-z0-9_']*/
    REF: /@[A-Za-z0-9_']+/ | /#[0-9]+/
    STRING: /"(\\.|[^"\\\n])*"/
    COMMENT: /\/\/[^\n]*/

    %import common.WS
    %ignore WS
    %ignore COMMENT
"""

_parser = Lark(SESSION_GRAMMAR, parser="lalr", propagate_positions=True)


def unquote(token: Token) -> str:
    """Strip the quotes of a STRING token; ``\\"`` stands for a quote."""
    return str(token)[1:-1].replace('\\"', '"')


@dataclass
class Definition:
    """
    One statement of a session file and what became of it.

    Attributes:
        name: Defined name
        kind: "machine", "term", "hole" or "context"
        line: Source line of the statement
        address: Bound address (an ExtAddress for contexts with holes)
        error: Why the definition was rejected, or None
    """

    name: str
    kind: str
    line: int
    address: Optional[Address] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


class Session:
    """
    Names bound over one address table.

    Attributes:
        table: The base address table
        extended: Extended table for contexts, layered over ``table``
        library: Addresses of the builtin machines
        names: Base addresses by name (builtins included)
        contexts: Context addresses by name (``xi`` included)
        definitions: Every statement loaded so far, in order
    """

    def __init__(self, table: Optional[AddressTable] = None):
        self.table = table if table is not None else AddressTable()
        self.library: Library = install(self.table)
        self.extended = ExtendedTable(self.table)
        self.names: dict[str, Address] = dict(self.library.names())
        self.contexts: dict[str, Address] = {HOLE_NAME: self.extended.intern(Hole())}
        self.definitions: list[Definition] = []

    @classmethod
    def from_file(cls, path: Union[str, Path], strict: bool = True, table: Optional[AddressTable] = None) -> "Session":
        session = cls(table)
        session.load_file(path, strict=strict)
        return session

    def load_file(self, path: Union[str, Path], strict: bool = True) -> list[Definition]:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise SessionError(f"cannot read {path}: {exc.strerror}") from exc
        return self.load(text, strict=strict)

    def load(self, text: str, strict: bool = True) -> list[Definition]:
        """
        Process session text top to bottom.

        Args:
            text: Session file contents
            strict: Raise on the first rejected definition; when False every
                definition is recorded with its error and loading continues

        Returns:
            The definitions added by this text

        Raises:
            SessionError: On syntax errors, a missing or unsupported header,
                and (when strict) the first rejected definition
        """
        try:
            tree = _parser.parse(text)
        except UnexpectedInput as exc:
            line = getattr(exc, "line", None)
            column = getattr(exc, "column", "?")
            raise SessionError(f"syntax error at column {column}", line if line and line > 0 else None) from exc

        statements = [child for child in tree.children if isinstance(child, Tree)]
        headers = [child for child in tree.children if isinstance(child, Token)]
        if headers:
            version = headers[0].split()[-1]
            if version != SESSION_VERSION:
                raise SessionError(f"unsupported session version {version}", headers[0].line)
        elif statements:
            raise SessionError(f"missing header 'addrvm {SESSION_VERSION}'", statements[0].meta.line)

        added = []
        for statement in statements:
            definition = self._define(statement)
            added.append(definition)
            self.definitions.append(definition)
            if not definition.ok and strict:
                raise SessionError(f"{definition.name}: {definition.error}", definition.line)
        return added

    def _define(self, statement: Tree) -> Definition:
        kind = statement.data.removesuffix("_def")
        name = str(statement.children[0])
        line = statement.meta.line
        definition = Definition(name, kind, line)
        if name in self.names or name in self.contexts:
            definition.error = f"name '{name}' is already defined"
            return definition
        try:
            if kind == "machine":
                address = self.table.intern(self._block(statement.children[1], extended=False))
                self.names[name] = address
            elif kind == "term":
                address = self.term(unquote(statement.children[1]))
                self.names[name] = address
            elif kind == "hole":
                tape = self._refs(statement.children[1], extended=True)
                address = self.contexts[name] = self.extended.intern(Hole(tape))
            else:
                address = self.extended.intern(self._block(statement.children[1], extended=True))
                self.contexts[name] = address
        except InputError as exc:
            definition.error = exc.message
            return definition
        definition.address = address
        logger.debug("definition bound", name=name, kind=kind, address=str(address))
        return definition

    def _block(self, block: Tree, extended: bool) -> Machine:
        fields: dict[str, Tree] = {}
        for field in block.children:
            key = field.data.removesuffix("_field")
            if key in fields:
                raise SessionError(f"field '{key}' given twice")
            fields[key] = field.children[0]

        registers: tuple[Cell, ...] = ()
        if "regs" in fields:
            registers = tuple(self._cell(cell, extended) for cell in fields["regs"].children)
        program = EMPTY
        if "prog" in fields:
            program = parse_program(unquote(fields["prog"]))
        tape = self._refs(fields["tape"], extended) if "tape" in fields else ()
        return Machine(registers, program, tape)

    def _cell(self, cell: Tree, extended: bool) -> Cell:
        if cell.data == "empty_cell":
            return None
        return self.ref(str(cell.children[0]), extended)

    def _refs(self, refs: Tree, extended: bool) -> tuple[Address, ...]:
        return tuple(self.ref(str(token), extended) for token in refs.children)

    def ref(self, text: str, extended: bool = False) -> Address:
        """
        Resolve ``@name`` or ``#id``.

        Context names resolve only when ``extended`` is set.

        Raises:
            UnboundVariable: For an unknown name
            DanglingAddress: For an id the table never issued
            SessionError: For a context name where a machine is required
        """
        if text.startswith("#"):
            address = Address(int(text[1:]))
            if not self.table.is_issued(address):
                raise DanglingAddress(address)
            return address
        name = text[1:] if text.startswith("@") else text
        if name in self.names:
            return self.names[name]
        if name in self.contexts:
            if not extended:
                raise SessionError(f"'{name}' is a context; only contexts may refer to it")
            return self.contexts[name]
        raise UnboundVariable(text)

    def term(self, text: str) -> Address:
        """Interpret a lambda-term; free variables and ``@name`` constants resolve to names."""
        return interpret(parse_term(text, self.names), self.names, self.table)

    def operand(self, text: str) -> Address:
        """
        Resolve a command-line operand.

        Tried in order: a name (with or without ``@``), a raw ``#id``, and a
        lambda-term.
        """
        text = text.strip()
        name = text[1:] if text.startswith("@") else text
        if name in self.names:
            return self.names[name]
        if text.startswith("#") and text[1:].isdigit():
            return self.ref(text)
        return self.term(text)

    def machine(self, text: str) -> Machine:
        return self.table.lookup(self.operand(text))

    def context(self, name: str) -> ExtendedMachine:
        if name not in self.contexts:
            raise UnboundVariable(name)
        return self.extended.lookup(self.contexts[name])

    def context_names(self) -> list[str]:
        return list(self.contexts)

    def is_context(self, address: Address) -> bool:
        return type(address) is ExtAddress


def load_session(path: Optional[Union[str, Path]] = None, strict: bool = True) -> Session:
    """A fresh session, optionally loaded from ``path``."""
    session = Session()
    if path is not None:
        session.load_file(path, strict=strict)
    return session


__all__ = ["Definition", "Session", "load_session"]
