"""
Textual rendering of machines.

The machine block format is the one session files use:

    machine NAME { regs = [_, #3]; prog = "Load 0; Call 0"; tape = [#1]; }

``_`` is an empty register and ``#id`` a raw address. Session files may also
write ``@name`` for a named address; rendering always uses raw ids.
"""

from typing import Iterable, Optional

from .core import Address, Machine


def format_refs(refs: Iterable[Address]) -> str:
    return "[" + ", ".join(str(a) for a in refs) + "]"


def format_cells(cells: Iterable[Optional[Address]]) -> str:
    return "[" + ", ".join("_" if c is None else str(c) for c in cells) + "]"


def format_machine(m: Machine, name: Optional[str] = None) -> str:
    """Render a machine as a session block (prefixed with ``machine NAME`` when named)."""
    body = (
        f'{{ regs = {format_cells(m.registers)}; prog = "{m.program}"; '
        f"tape = {format_refs(m.tape)}; }}"
    )
    if name is not None:
        return f"machine {name} {body}"
    return body
