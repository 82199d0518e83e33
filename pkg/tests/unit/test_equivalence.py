"""Unit tests for the equivalence checkers."""

import pytest

from addrvm.core import Address
from addrvm.equivalence import (
    RECURRENCE_BASIS,
    ApplicativeChecker,
    EvaluationChecker,
    ae_check,
    create_checker,
    fresh_indeterminate,
    replay_witness,
)
from addrvm.errors import DanglingAddress
from addrvm.terms import interpret, parse_term
from addrvm.verdicts import Distinct, Equiv, EquivUpTo, Unknown

FUEL = 500


class TestFreshIndeterminate:
    """Test cases for fresh_indeterminate."""

    def test_successive_calls_differ(self, table, lib):
        """Test that every call yields a new indeterminate."""
        first = fresh_indeterminate(table)
        second = fresh_indeterminate(table)

        assert first != second
        assert first not in lib.indeterminates

    def test_wider_than_every_machine(self, table, lib):
        """Test that the fresh x_n has more registers than anything before it."""
        widest = table.max_registers
        x = fresh_indeterminate(table)

        assert table.lookup(x).r == widest + 1


class TestApplicativeCheck:
    """Test cases for ae_check."""

    def test_reflexive(self, table, lib):
        """Test that a machine is equivalent to itself at the requested depth."""
        assert ae_check(lib.S, lib.S, table, FUEL, depth=3) == EquivUpTo(3)

    def test_distinct_indeterminates(self, table, lib):
        """Test that x1 and x2 are separated without any argument."""
        verdict = ae_check(lib.x(1), lib.x(2), table, FUEL, depth=2)

        assert isinstance(verdict, Distinct)
        assert verdict.witness.arguments == ()
        assert (verdict.witness.left, verdict.witness.right) == ("x1", "x2")

    def test_same_indeterminate_reached(self, table, lib):
        """Test that I x1 and x1 are equivalent."""
        assert ae_check(table.apply(lib.I, lib.x(1)), lib.x(1), table, FUEL, depth=2) == EquivUpTo(2)

    def test_identity_against_s_ki_i(self, table, lib):
        """Test that S (K I) I behaves as the identity once applied."""
        ki = table.apply(lib.K, lib.I)
        skii = table.apply(table.apply(lib.S, ki), lib.I)

        assert ae_check(lib.I, skii, table, FUEL, depth=3) == EquivUpTo(3)

    def test_identity_against_one(self, table, lib):
        """Test that I and 1 differ after one fresh argument."""
        verdict = ae_check(lib.I, lib.one, table, FUEL, depth=3)

        assert isinstance(verdict, Distinct)
        assert len(verdict.witness.arguments) == 1
        assert verdict.witness.left.startswith("x")
        assert verdict.witness.right == "stuck"

    def test_witness_replays(self, table, lib):
        """Test that the witness reproduces the observed difference."""
        verdict = ae_check(lib.I, lib.one, table, FUEL, depth=3)
        witness = verdict.witness

        assert replay_witness(lib.I, lib.one, witness, table, FUEL) == (witness.left, witness.right)

    def test_k_against_k_prime(self, table, lib):
        """Test that the extra register of K' needs two arguments to wash out."""
        assert ae_check(lib.K, lib.K_prime, table, FUEL, depth=2) == EquivUpTo(2)
        assert ae_check(lib.K, lib.K_prime, table, FUEL, depth=1) == Unknown("depth")

    def test_k_against_s(self, table, lib):
        """Test that K and S separate after two arguments."""
        verdict = ae_check(lib.K, lib.S, table, FUEL, depth=3)

        assert isinstance(verdict, Distinct)
        assert len(verdict.witness.arguments) == 2
        assert verdict.witness.right == "stuck"

    def test_divergence_against_indeterminate(self, table, lib):
        """Test that an exact cycle never reaches x_n."""
        verdict = ae_check(lib.O, lib.x(0), table, FUEL, depth=1)

        assert isinstance(verdict, Distinct)
        assert (verdict.witness.left, verdict.witness.right) == ("cycle", "x0")

    def test_two_cycles_undecided(self, table, lib):
        """Test that two divergent machines are not separated."""
        o_x = table.apply(lib.O, lib.x(1))

        assert ae_check(lib.O, o_x, table, FUEL, depth=1) == Unknown("cycle")

    def test_stuck_against_divergent_needs_strict(self, table):
        """Test that \\x.Omega and Omega are separated only in strict mode."""
        omega = "(\\y.y y)(\\y.y y)"
        lam = interpret(parse_term(f"\\x.{omega}"), {}, table)
        loop = interpret(parse_term(omega), {}, table)

        lenient = ae_check(lam, loop, table, 200, depth=1, strict_distinct=False)
        strict = ae_check(lam, loop, table, 200, depth=1, strict_distinct=True)

        assert isinstance(lenient, Unknown)
        assert isinstance(strict, Distinct)
        assert strict.witness.left == "stuck"
        assert strict.reason == RECURRENCE_BASIS

    def test_exact_cycle_basis(self, table, lib):
        """Test that a stuck machine against O is separated on the basis of an exact cycle."""
        verdict = ae_check(lib.O, lib.K, table, FUEL, depth=1, strict_distinct=True)

        assert isinstance(verdict, Distinct)
        assert verdict.reason == "exact cycle"
        assert verdict.witness.left == "cycle"

    def test_recurrence_does_not_separate_from_indeterminate(self, table, lib):
        """Test that compiled Omega against x1 stays undecided even in strict mode."""
        loop = interpret(parse_term("(\\y.y y)(\\y.y y)"), {}, table)

        lenient = ae_check(loop, lib.x(1), table, 200, depth=1, strict_distinct=False)
        strict = ae_check(loop, lib.x(1), table, 200, depth=1, strict_distinct=True)

        assert lenient == Unknown("fuel")
        assert strict == Unknown("cycle")

    def test_compiled_eta_expansion_is_separated(self, table):
        """Test that \\x y.x y and \\x.x differ on one fresh argument."""
        eta = interpret(parse_term("\\x y.x y"), {}, table)
        identity = interpret(parse_term("\\x.x"), {}, table)
        verdict = ae_check(eta, identity, table, FUEL, depth=3)

        assert isinstance(verdict, Distinct)
        assert len(verdict.witness.arguments) == 1
        assert verdict.witness.left == "stuck"
        assert verdict.witness.right == f"x{table.lookup(verdict.witness.arguments[0]).r - 1}"
        assert replay_witness(eta, identity, verdict.witness, table, FUEL) == ("stuck", verdict.witness.right)

    def test_negative_depth(self, table, lib):
        """Test that the depth budget cannot be negative."""
        with pytest.raises(ValueError, match="depth"):
            ae_check(lib.K, lib.K, table, FUEL, depth=-1)

    def test_dangling_operand(self, table, lib):
        """Test that both operands must be issued."""
        with pytest.raises(DanglingAddress):
            ae_check(lib.K, Address(9999), table, FUEL, depth=1)


class TestCheckerFactory:
    """Test cases for create_checker."""

    def test_create_eval_checker(self, table):
        """Test creating the evaluation checker."""
        checker = create_checker("eval", table, fuel=100)

        assert isinstance(checker, EvaluationChecker)
        assert checker.mode == "eval"
        assert checker.fuel == 100

    def test_create_ae_checker(self, table):
        """Test creating the applicative checker with its options."""
        checker = create_checker("AE", table, fuel=100, depth=4, strict_distinct=True)

        assert isinstance(checker, ApplicativeChecker)
        assert checker.depth == 4
        assert checker.strict_distinct is True
        assert repr(checker) == "ApplicativeChecker(mode='ae', fuel=100)"

    def test_invalid_mode(self, table):
        """Test that an unknown mode names the available ones."""
        with pytest.raises(ValueError, match="Unknown mode: bogus. Available modes: eval, ae"):
            create_checker("bogus", table)

    def test_negative_fuel(self, table):
        """Test that fuel cannot be negative."""
        with pytest.raises(ValueError, match="fuel"):
            create_checker("eval", table, fuel=-1)

    def test_checkers_dispatch(self, table, lib):
        """Test that each checker answers with its own kind of verdict."""
        assert create_checker("eval", table, fuel=FUEL).check(lib.K, lib.K) == Equiv()
        assert create_checker("ae", table, fuel=FUEL, depth=2).check(lib.K, lib.K_prime) == EquivUpTo(2)
