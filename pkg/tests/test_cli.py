"""
Tests for the command-line interface.
"""
import json

import pytest
from click.testing import CliRunner

from addrvm.cli import cli

CONTEXT_TEXT = """addrvm v1
hole H = [@x2];
context C { regs = [_]; prog = "Load 0; Load 1; Call 0"; tape = [@H, @x1]; }
"""


@pytest.fixture
def runner():
    """A click test runner."""
    return CliRunner()


@pytest.fixture
def validity_file(tmp_path, validity_session_text):
    """The example programs written to disk."""
    path = tmp_path / "validity.addrvm"
    path.write_text(validity_session_text, encoding="utf-8")
    return str(path)


class TestValidate:
    """Tests for the validate command."""

    def test_validity_fixture(self, runner, validity_file):
        """Test that the four valid programs pass and three fail."""
        result = runner.invoke(cli, ["validate", validity_file])

        assert result.exit_code == 3
        assert result.output.count("): ok") == 4
        assert "P5 (line 8): error: instruction 1: register 3 uninitialized" in result.output
        assert "7 definitions, 3 errors" in result.output

    def test_json_report(self, runner, validity_file):
        """Test the structured report."""
        result = runner.invoke(cli, ["validate", "--json", validity_file])
        report = json.loads(result.output)

        assert report["ok"] is False
        assert [d["ok"] for d in report["definitions"]] == [True, True, True, True, False, False, False]
        assert report["definitions"][0]["address"].startswith("#")

    def test_empty_file(self, runner, tmp_path):
        """Test that an empty session validates."""
        path = tmp_path / "empty.addrvm"
        path.write_text("", encoding="utf-8")

        result = runner.invoke(cli, ["validate", str(path)])

        assert result.exit_code == 0
        assert "0 definitions, 0 errors" in result.output

    def test_syntax_error(self, runner, tmp_path):
        """Test that unparsable files are input errors."""
        path = tmp_path / "bad.addrvm"
        path.write_text("addrvm v1\nmachine {\n", encoding="utf-8")

        result = runner.invoke(cli, ["validate", str(path)])

        assert result.exit_code == 3
        assert "error: line 2: syntax error" in result.output


class TestRun:
    """Tests for the run command."""

    def test_cycle(self, runner):
        """Test that O is reported as a cycle after three steps."""
        result = runner.invoke(cli, ["run", "O"])

        assert result.exit_code == 0
        assert "cycle at" in result.output
        assert "after 3 steps" in result.output

    def test_out_of_fuel(self, runner):
        """Test that exhausting fuel exits 2."""
        result = runner.invoke(cli, ["run", "--fuel", "2", "O"])

        assert result.exit_code == 2
        assert "out of fuel after 2 steps" in result.output

    def test_trace(self, runner):
        """Test that the trace lists every state."""
        result = runner.invoke(cli, ["run", "--trace", "O"])

        lines = result.output.splitlines()
        assert lines[0].startswith("0: { regs = [_]; prog = \"Load 0; App 0 0 0; Call 0\"")
        assert lines[2].startswith("2: ")
        assert not any(line.startswith("3: ") for line in lines)

    def test_term_operand(self, runner):
        """Test that lambda-terms run as their compiled machine."""
        result = runner.invoke(cli, ["run", "I x1"])

        assert result.exit_code == 0
        assert "final after" in result.output
        assert '=> { regs = [_, _]; prog = ""; tape = []; }' in result.output

    def test_bigstep(self, runner):
        """Test that the big-step evaluator prints its spine."""
        result = runner.invoke(cli, ["run", "--bigstep", "I x1"])

        assert result.exit_code == 0
        assert result.output.startswith("(")
        assert '=> { regs = [_, _]; prog = ""; tape = []; }' in result.output

    def test_json_report(self, runner):
        """Test the structured run report."""
        result = runner.invoke(cli, ["run", "--json", "O"])
        report = json.loads(result.output)

        assert report["outcome"] == "cycle"
        assert report["steps"] == 3
        assert report["address"] == "#8"

    def test_session_names(self, runner, tmp_path):
        """Test that operands may name session definitions."""
        path = tmp_path / "s.addrvm"
        path.write_text('addrvm v1\nmachine P0 { regs = [_, @x0, @x1, _]; prog = "Load 0; App 0 1 2; Call 2"; }\n')

        result = runner.invoke(cli, ["--session", str(path), "run", "P0"])

        assert result.exit_code == 0
        assert "stuck after 0 steps" in result.output

    def test_unknown_operand(self, runner):
        """Test that unbound names are input errors."""
        result = runner.invoke(cli, ["run", "nope"])

        assert result.exit_code == 3
        assert "error: unbound variable" in result.output

    def test_dump_table(self, runner):
        """Test that --dump-table prints the table after the command."""
        result = runner.invoke(cli, ["--dump-table", "run", "K"])

        assert "4: regs=[_] prog=\"Load 0; Load 1; Call 0\" tape=[]" in result.output


class TestCompile:
    """Tests for the compile command."""

    def test_identity(self, runner):
        """Test that \\x.x compiles to the one-argument projection."""
        result = runner.invoke(cli, ["compile", "\\x.x"])

        assert result.exit_code == 0
        assert 'prog = "Load 0; Call 0"' in result.output
        assert "created:" in result.output

    def test_context(self, runner):
        """Test compiling under a variable context."""
        result = runner.invoke(cli, ["compile", "--ctx", "x,y", "x"])

        assert result.exit_code == 0
        assert 'prog = "Load 0; Load 1; Call 0"' in result.output

    def test_free_variable(self, runner):
        """Test that free variables need a context."""
        result = runner.invoke(cli, ["compile", "x"])

        assert result.exit_code == 3
        assert "error: unbound variable: x" in result.output

    def test_malformed_term(self, runner):
        """Test that unparsable terms are input errors."""
        result = runner.invoke(cli, ["compile", "\\x."])

        assert result.exit_code == 3
        assert "malformed term" in result.output


class TestEquiv:
    """Tests for the equiv command."""

    def test_eval_reflexive(self, runner):
        """Test that K is evaluation-equivalent to itself."""
        result = runner.invoke(cli, ["equiv", "--mode", "eval", "K", "K"])

        assert result.exit_code == 0
        assert result.output.strip() == "equiv"

    def test_eval_distinct(self, runner):
        """Test that S(KI)I and I have different normal forms."""
        result = runner.invoke(cli, ["equiv", "--mode", "eval", "S(KI)I", "I"])

        assert result.exit_code == 1
        assert result.output.startswith("distinct")

    def test_ae_identity_against_one(self, runner):
        """Test that I and 1 are separated with a witness."""
        result = runner.invoke(cli, ["equiv", "--mode", "ae", "I", "1"])

        assert result.exit_code == 1
        assert "witness: after applying #" in result.output

    def test_ae_depth(self, runner):
        """Test the depth budget of the ae mode."""
        shallow = runner.invoke(cli, ["equiv", "--mode", "ae", "--depth", "1", "K", "K'"])
        deep = runner.invoke(cli, ["equiv", "--mode", "ae", "--depth", "2", "K", "K'"])

        assert shallow.exit_code == 2
        assert shallow.output.strip() == "unknown(depth)"
        assert deep.exit_code == 0
        assert deep.output.strip() == "equiv(depth=2)"

    def test_strict_basis(self, runner):
        """Test that a strict separation names what it rests on."""
        result = runner.invoke(cli, ["equiv", "--mode", "ae", "--strict-distinct", "--depth", "1", "O", "K"])

        assert result.exit_code == 1
        assert "basis: exact cycle" in result.output

    def test_json_report(self, runner):
        """Test the structured verdict."""
        result = runner.invoke(cli, ["equiv", "--json", "--mode", "ae", "I", "1"])
        report = json.loads(result.output)

        assert report["verdict"] == "distinct"
        assert len(report["witness"]["arguments"]) == 1
        assert report["witness"]["right"] == "stuck"

    def test_unknown_mode(self, runner):
        """Test that only the known modes are accepted."""
        result = runner.invoke(cli, ["equiv", "--mode", "bogus", "K", "K"])

        assert result.exit_code == 2
        assert "Invalid value for '--mode'" in result.output


class TestUnderline:
    """Tests for the underline command."""

    def test_correspondence(self, runner, tmp_path):
        """Test that the last context of the file runs alongside its plugging."""
        path = tmp_path / "ctx.addrvm"
        path.write_text(CONTEXT_TEXT, encoding="utf-8")

        result = runner.invoke(cli, ["underline", "--context", str(path), "--machine", "I"])

        assert result.exit_code == 0
        assert "xi ++ [#2]" in result.output
        assert result.output.strip().endswith("correspondence: ok")

    def test_named_hole(self, runner, tmp_path):
        """Test choosing a context by name."""
        path = tmp_path / "ctx.addrvm"
        path.write_text(CONTEXT_TEXT, encoding="utf-8")

        result = runner.invoke(cli, ["underline", "--context", str(path), "--machine", "K", "--name", "H"])

        assert result.exit_code == 0
        assert result.output.startswith("0: xi ++ [#2]")

    def test_no_context(self, runner, tmp_path):
        """Test that the file must define a context."""
        path = tmp_path / "none.addrvm"
        path.write_text("addrvm v1\n", encoding="utf-8")

        result = runner.invoke(cli, ["underline", "--context", str(path), "--machine", "I"])

        assert result.exit_code == 3
        assert "defines no context" in result.output


class TestDump:
    """Tests for the dump command."""

    def test_builtins(self, runner):
        """Test that a fresh table holds the eleven builtins."""
        result = runner.invoke(cli, ["dump"])

        lines = result.output.splitlines()
        assert result.exit_code == 0
        assert len(lines) == 11
        assert lines[0] == '0: regs=[_] prog="" tape=[]'
        assert lines[6] == '6: regs=[_, _, _] prog="Load 0; Load 1; Load 2; App 0 2 0; App 1 2 1; App 0 1 2; Call 2" tape=[#4, #4]'
