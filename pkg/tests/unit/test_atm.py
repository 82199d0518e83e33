"""Unit tests for machines and the address table."""

import pytest

from addrvm.combinators import install
from addrvm.core import Address, Machine, append_tape, indeterminate, indeterminate_index, is_final, is_stuck
from addrvm.errors import DanglingAddress, ValidityError
from addrvm.program import EMPTY
from addrvm.textual import format_machine
from addrvm.validator import parse_program


class TestMachine:
    """Test cases for machine values."""

    def test_invalid_program_refused(self):
        """Test that construction runs the validity judgment."""
        with pytest.raises(ValidityError, match="register 0 uninitialized"):
            Machine((None,), parse_program("Call 0"))

    def test_append_tape(self):
        """Test that appending extends the tape only."""
        m = Machine((Address(1),), parse_program("Call 0"), (Address(2),))
        extended = append_tape(m, [Address(3)])

        assert extended.tape == (Address(2), Address(3))
        assert extended.registers == m.registers
        assert extended.program == m.program
        assert append_tape(m, []) is m

    def test_stuck_and_final(self):
        """Test the stuck/final classification."""
        waiting = Machine((None,), parse_program("Load 0; Call 0"))

        assert is_stuck(waiting)
        assert is_final(waiting)
        assert not is_stuck(append_tape(waiting, [Address(0)]))
        assert is_final(Machine((), EMPTY, (Address(0),)))
        assert not is_stuck(Machine((), EMPTY))

    def test_indeterminates(self):
        """Test that x_n has n+1 empty registers and is recognized."""
        x2 = indeterminate(2)

        assert x2.registers == (None, None, None)
        assert indeterminate_index(x2) == 2
        assert indeterminate_index(append_tape(x2, [Address(0)])) is None
        assert indeterminate_index(Machine(())) is None

    def test_format_machine(self):
        """Test the session block rendering."""
        m = Machine((None, Address(3)), parse_program("Load 0; Call 0"), (Address(1),))

        assert format_machine(m) == '{ regs = [_, #3]; prog = "Load 0; Call 0"; tape = [#1]; }'
        assert format_machine(m, "M").startswith("machine M { regs")


class TestAddressTable:
    """Test cases for structural interning."""

    def test_intern_is_structural(self, table):
        """Test that equal machines get one address and distinct ones differ."""
        a = table.intern(indeterminate(0))
        b = table.intern(indeterminate(0))
        c = table.intern(indeterminate(1))

        assert a == b == Address(0)
        assert c == Address(1)
        assert len(table) == 2

    def test_lookup_inverts_intern(self, table):
        """Test the bijection in both directions."""
        m = indeterminate(3)
        a = table.intern(m)

        assert table.lookup(a) == m
        assert table.find(m) == a
        assert table.find(indeterminate(4)) is None

    def test_dangling_lookup(self, table):
        """Test lookup of an id that was never issued."""
        with pytest.raises(DanglingAddress, match="#7 was never issued"):
            table.lookup(Address(7))

    def test_intern_refuses_dangling_references(self, table):
        """Test that every referenced address is issued first."""
        with pytest.raises(DanglingAddress):
            table.intern(Machine((Address(0),)))

    def test_apply_is_static(self, table, lib):
        """Test a.b = address of lookup(a) with b appended, without running it."""
        ka = table.apply(lib.K, lib.S)

        assert table.lookup(ka) == append_tape(table.lookup(lib.K), [lib.S])
        assert table.apply(lib.K, lib.S) == ka

    def test_apply_to_dangling(self, table, lib):
        """Test that the argument must be issued."""
        with pytest.raises(DanglingAddress):
            table.apply(lib.K, Address(999))

    def test_references_precede_referrers(self, table, lib):
        """Test acyclicity: every stored address is older than its machine."""
        table.apply(table.apply(lib.S, lib.K), lib.I)

        for address, machine in table.entries():
            assert all(ref.id < address.id for ref in machine.references())

    def test_max_registers(self, table):
        """Test that the widest register bank is tracked."""
        table.intern(indeterminate(5))
        table.intern(indeterminate(2))

        assert table.max_registers == 6

    def test_dump_lines(self, table):
        """Test the dump format."""
        table.intern(indeterminate(0))
        table.intern(Machine((Address(0),), parse_program("Call 0"), (Address(0),)))

        assert table.dump_lines() == [
            '0: regs=[_] prog="" tape=[]',
            '1: regs=[#0] prog="Call 0" tape=[#0]',
        ]
        assert table.dump_lines(start=1) == ['1: regs=[#0] prog="Call 0" tape=[#0]']


class TestLibrary:
    """Test cases for the builtin machines."""

    def test_installation_order(self, lib):
        """Test that builtins get fixed ids in a fresh table."""
        names = lib.names()

        assert [str(a) for a in names.values()] == [f"#{i}" for i in range(11)]
        assert list(names) == ["x0", "x1", "x2", "x3", "K", "S", "I", "D", "O", "K'", "1"]

    def test_identity_is_s_k_k(self, table, lib):
        """Test that I is S with K, K on its tape."""
        assert table.lookup(lib.I) == append_tape(table.lookup(lib.S), [lib.K, lib.K])

    def test_install_is_idempotent(self, table, lib):
        """Test that reinstalling reuses the same addresses."""
        assert install(table) == lib
