"""
The Address Table Map: structural interning of machines.

One table gives every distinct machine a unique address. Allocation is lazy
and append-only, so every address a machine refers to was issued before the
machine itself, and dereferencing always terminates. The table is the only
shared mutable state in the toolchain; all operations take its lock.
"""

import threading
from typing import Iterator, Optional

from .core import Address, Machine, append_tape
from .errors import DanglingAddress
from .textual import format_cells, format_refs


class AddressTable:
    """
    Append-only bijection between issued addresses and machines.

    Attributes:
        lock: Re-entrant lock guarding allocation; callers that need several
            operations to see a consistent table (fresh indeterminates) hold it
    """

    def __init__(self) -> None:
        self._forward: list[Machine] = []
        self._backward: dict[Machine, Address] = {}
        self._max_registers = 0
        self.lock = threading.RLock()

    def __len__(self) -> int:
        return len(self._forward)

    @property
    def max_registers(self) -> int:
        """Largest register count among interned machines."""
        return self._max_registers

    def is_issued(self, a: object) -> bool:
        return type(a) is Address and 0 <= a.id < len(self._forward)

    def find(self, m: Machine) -> Optional[Address]:
        """Address of ``m`` if it was interned, without allocating."""
        return self._backward.get(m)

    def intern(self, m: Machine) -> Address:
        """
        Return the address of ``m``, allocating the next id on first sight.

        Raises:
            DanglingAddress: If ``m`` refers to an address this table never issued
        """
        found = self._backward.get(m)
        if found is not None:
            return found
        with self.lock:
            found = self._backward.get(m)
            if found is not None:
                return found
            for ref in m.references():
                if not self.is_issued(ref):
                    raise DanglingAddress(ref)
            address = Address(len(self._forward))
            self._forward.append(m)
            self._backward[m] = address
            if m.r > self._max_registers:
                self._max_registers = m.r
            return address

    def lookup(self, a: Address) -> Machine:
        """
        Return the machine named by ``a``.

        Raises:
            DanglingAddress: If ``a`` was never issued
        """
        if type(a) is not Address or not 0 <= a.id < len(self._forward):
            raise DanglingAddress(a)
        return self._forward[a.id]

    def apply(self, a: Address, b: Address) -> Address:
        """
        The application map ``a . b``: the address of lookup(a) with b appended.

        Purely static: no machine is executed.
        """
        if not self.is_issued(b):
            raise DanglingAddress(b)
        return self.intern(append_tape(self.lookup(a), (b,)))

    def entries(self) -> Iterator[tuple[Address, Machine]]:
        """Issued (address, machine) pairs in allocation order."""
        for index, machine in enumerate(list(self._forward)):
            yield Address(index), machine

    def dump_lines(self, start: int = 0) -> list[str]:
        """
        Render the table, one line per id, from id ``start`` on.

        Format: ``id: regs=[...] prog="..." tape=[...]``
        """
        return [
            f'{a.id}: regs={format_cells(m.registers)} prog="{m.program}" tape={format_refs(m.tape)}'
            for a, m in self.entries()
            if a.id >= start
        ]
