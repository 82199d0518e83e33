"""Unit tests for session files."""

import pytest

from addrvm.contexts import Hole
from addrvm.core import Address
from addrvm.errors import SessionError, UnboundVariable
from addrvm.session import Session, load_session


class TestBuiltins:
    """Test cases for the names every session starts with."""

    def test_builtin_names(self, session):
        """Test that the standard machines have their fixed ids."""
        assert session.names["x0"] == Address(0)
        assert session.names["K"] == Address(4)
        assert session.names["I"] == Address(6)
        assert session.names["1"] == Address(10)

    def test_bare_hole(self, session):
        """Test that xi is the only context of a fresh session."""
        assert session.context_names() == ["xi"]
        assert session.context("xi") == Hole()


class TestLoad:
    """Test cases for Session.load."""

    def test_validity_fixture(self, session, validity_fixture, validity_session_text):
        """Test that every example program gets the expected judgment."""
        definitions = session.load(validity_session_text, strict=False)

        assert [d.name for d in definitions] == list(validity_fixture)
        for definition in definitions:
            assert definition.ok is validity_fixture[definition.name][1]

    def test_error_names_register(self, session, validity_session_text):
        """Test that rejections say which register was read."""
        definitions = {d.name: d for d in session.load(validity_session_text, strict=False)}

        assert definitions["P4"].error == "instruction 0: register 0 uninitialized"
        assert definitions["P6"].error == "instruction 1: register 5 nonexistent"
        assert "P4" not in session.names

    def test_strict_stops_at_first_error(self, session, validity_session_text):
        """Test that strict loading raises with the statement line."""
        with pytest.raises(SessionError, match="line 7: P4") as exc_info:
            session.load(validity_session_text)

        assert exc_info.value.line == 7
        assert "P3" in session.names

    def test_empty_text(self, session):
        """Test that an empty file defines nothing."""
        assert session.load("") == []
        assert session.load("addrvm v1\n// nothing here\n") == []

    def test_missing_header(self, session):
        """Test that statements need the header."""
        with pytest.raises(SessionError, match="missing header"):
            session.load("machine A { }")

    def test_unsupported_version(self, session):
        """Test that only version 1 is accepted."""
        with pytest.raises(SessionError, match="unsupported session version v2"):
            session.load("addrvm v2\n")

    def test_syntax_error(self, session):
        """Test that malformed statements report their line."""
        with pytest.raises(SessionError, match="line 2: syntax error"):
            session.load("addrvm v1\nmachine A { regs = [_ }\n")

    def test_duplicate_name(self, session):
        """Test that names cannot be rebound, builtins included."""
        definitions = session.load("addrvm v1\nmachine A { }\nmachine A { }\nmachine K { }\n", strict=False)

        assert [d.ok for d in definitions] == [True, False, False]
        assert definitions[1].error == "name 'A' is already defined"

    def test_duplicate_field(self, session):
        """Test that a field may be given once."""
        definitions = session.load('addrvm v1\nmachine A { prog = ""; prog = ""; }\n', strict=False)

        assert definitions[0].error == "field 'prog' given twice"

    def test_forward_reference(self, session):
        """Test that definitions only see names defined above them."""
        text = "addrvm v1\nmachine A { regs = [@B]; }\nmachine B { }\n"
        definitions = session.load(text, strict=False)

        assert definitions[0].error == "unbound variable: @B"
        assert definitions[1].ok

    def test_raw_addresses(self, session):
        """Test #id references, issued or not."""
        definitions = session.load("addrvm v1\nmachine A { tape = [#4]; }\nmachine B { tape = [#999]; }\n", strict=False)

        assert definitions[0].ok
        assert definitions[1].error == "address #999 was never issued"

    def test_machine_with_program(self, session):
        """Test that fields build the machine they describe."""
        session.load('addrvm v1\nmachine M { regs = [@K, _]; prog = "Load 1; Call 0"; tape = [@S]; }\n')

        m = session.machine("M")
        assert m.registers == (session.names["K"], None)
        assert str(m.program) == "Load 1; Call 0"
        assert m.tape == (session.names["S"],)

    def test_escaped_quote_in_string(self, session):
        """Test that an escaped quote is read as a quote."""
        definitions = session.load('addrvm v1\nmachine A { prog = "Load 0\\""; }\n', strict=False)

        assert "malformed program" in definitions[0].error


class TestTermsAndContexts:
    """Test cases for term, hole and context definitions."""

    def test_term_definition(self, session):
        """Test that term variables resolve to earlier names."""
        session.load('addrvm v1\nterm SKI = "S(KI)I";\n')

        assert session.names["SKI"] == session.term("S (K I) I")

    def test_term_constants(self, session):
        """Test that @name constants work in terms."""
        session.load('addrvm v1\nterm KK = "\\x.@K x";\n')

        assert "KK" in session.names

    def test_hole_definition(self, session):
        """Test that a hole takes its tape from the refs."""
        session.load("addrvm v1\nhole H = [@x1, @xi];\n")

        assert session.context("H") == Hole((session.names["x1"], session.contexts["xi"]))

    def test_context_definition(self, session):
        """Test that contexts may mention holes."""
        session.load('addrvm v1\ncontext C { regs = [_]; prog = "Load 0; Call 0"; tape = [@xi]; }\n')

        c = session.context("C")
        assert c.tape == (session.contexts["xi"],)
        assert session.is_context(session.contexts["C"])

    def test_context_without_holes_is_base(self, session):
        """Test that a context mentioning no hole gets a base address."""
        session.load("addrvm v1\ncontext C { tape = [@K]; }\n")

        assert not session.is_context(session.contexts["C"])

    def test_machine_cannot_mention_context(self, session):
        """Test that ordinary machines may not refer to holes."""
        definitions = session.load("addrvm v1\nmachine A { tape = [@xi]; }\n", strict=False)

        assert definitions[0].error == "'xi' is a context; only contexts may refer to it"

    def test_unknown_context(self, session):
        """Test that only defined contexts can be looked up."""
        with pytest.raises(UnboundVariable):
            session.context("nope")


class TestOperand:
    """Test cases for command-line operand resolution."""

    def test_names(self, session):
        """Test bare and @-prefixed names."""
        assert session.operand("K") == session.operand("@K") == Address(4)

    def test_raw_address(self, session):
        """Test #id operands."""
        assert session.operand("#5") == Address(5)

    def test_term(self, session):
        """Test that anything else is a lambda-term."""
        assert session.operand("\\x.x") == session.term("\\y.y")

    def test_unknown_name(self, session):
        """Test that free variables of an operand must be names."""
        with pytest.raises(UnboundVariable, match="x5"):
            session.operand("x5")


class TestFiles:
    """Test cases for loading from disk."""

    def test_from_file(self, tmp_path, validity_session_text):
        """Test loading a session file non-strictly."""
        path = tmp_path / "p.addrvm"
        path.write_text(validity_session_text, encoding="utf-8")

        session = Session.from_file(path, strict=False)

        assert len(session.definitions) == 7
        assert sum(d.ok for d in session.definitions) == 4

    def test_missing_file(self, tmp_path):
        """Test that unreadable files are session errors."""
        with pytest.raises(SessionError, match="cannot read"):
            load_session(tmp_path / "missing.addrvm")

    def test_load_session_without_path(self):
        """Test that no path gives only the builtins."""
        assert load_session().definitions == []
