"""
Command-line interface.

    python -m addrvm [--session FILE] [--dump-table] COMMAND ...

Commands: validate, run, compile, equiv, underline, dump. Verdicts and
traces go to stdout, errors and logs to stderr.

Exit codes: 0 success or equivalent, 1 distinct, 2 unknown (or out of
fuel), 3 input error.
"""

import functools
from dataclasses import dataclass
from typing import Any, Callable, Optional

import click

from .config import get_settings
from .contexts import correspondence_trace, format_extended
from .equivalence import MODES, create_checker
from .errors import EXIT_INPUT_ERROR, EXIT_OK, EXIT_UNKNOWN, AddrVMError, SessionError, exit_code_for
from .reports import DefinitionReport, ValidationReport, equiv_report, run_report
from .session import Session
from .terms import compile_term, parse_term
from .textual import format_machine
from .utils.logging import bind_command_context, get_logger, setup_logging, unbind_command_context
from .verdicts import Distinct, verdict_exit_code
from .vm import OutOfFuel, derive, run, trace

logger = get_logger(__name__)


@dataclass
class CliState:
    session_file: Optional[str]
    dump_table: bool
    _session: Optional[Session] = None

    @property
    def session(self) -> Session:
        if self._session is None:
            self._session = Session()
            if self.session_file is not None:
                self._session.load_file(self.session_file)
        return self._session


def command(func: Callable[..., int]) -> Callable[..., None]:
    """
    Run a command body, map its result or error to an exit code, and dump
    the table afterwards when ``--dump-table`` was given.
    """

    @functools.wraps(func)
    @click.pass_obj
    def wrapper(state: CliState, **kwargs: Any) -> None:
        bind_command_context(click.get_current_context().info_name, session=state.session_file)
        try:
            code = func(state, **kwargs)
        except AddrVMError as exc:
            click.echo(f"error: {exc.message}", err=True)
            code = exit_code_for(exc)
        except RecursionError as exc:
            logger.error("command aborted", error=str(exc))
            click.echo("error: nesting too deep to evaluate", err=True)
            code = exit_code_for(exc)
        finally:
            unbind_command_context()
        if state.dump_table and state._session is not None:
            for line in state._session.table.dump_lines():
                click.echo(line)
        raise click.exceptions.Exit(code)

    return wrapper


def fuel_option(func: Callable) -> Callable:
    return click.option(
        "--fuel",
        type=click.IntRange(min=0),
        default=None,
        help="Head-step budget (default: ADDRVM_DEFAULT_FUEL or 10000)",
    )(func)


def _fuel(fuel: Optional[int]) -> int:
    return get_settings().default_fuel if fuel is None else fuel


@click.group()
@click.option("--session", "session_file", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Session file whose definitions operands may name")
@click.option("--dump-table", is_flag=True, help="Print the address table after the command")
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
                                               case_sensitive=False), default=None,
              help="Log level for stderr diagnostics")
@click.pass_context
def cli(ctx: click.Context, session_file: Optional[str], dump_table: bool, log_level: Optional[str]) -> None:
    """Addressing machines: run, compile and compare them."""
    settings = get_settings()
    if log_level is not None:
        settings = settings.model_copy(update={"log_level": log_level.upper()})
    setup_logging(settings)
    ctx.obj = CliState(session_file, dump_table)


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Print a JSON report")
@command
def validate(state: CliState, file: str, as_json: bool) -> int:
    """Check every definition in FILE and list its status."""
    definitions = state.session.load_file(file, strict=False)
    ok = all(d.ok for d in definitions)
    if as_json:
        report = ValidationReport(
            file=file,
            ok=ok,
            definitions=[DefinitionReport.from_definition(d) for d in definitions],
        )
        click.echo(report.model_dump_json(indent=2))
    else:
        for d in definitions:
            status = "ok" if d.ok else f"error: {d.error}"
            click.echo(f"{d.name} (line {d.line}): {status}")
        errors = sum(1 for d in definitions if not d.ok)
        click.echo(f"{len(definitions)} definitions, {errors} errors")
    return EXIT_OK if ok else EXIT_INPUT_ERROR


@cli.command("run")
@click.argument("operand")
@fuel_option
@click.option("--trace/--no-trace", "show_trace", default=False, help="Print every head-reduction state")
@click.option("--bigstep", is_flag=True, help="Evaluate with the big-step rules and print the derivation")
@click.option("--json", "as_json", is_flag=True, help="Print a JSON report")
@command
def run_command(state: CliState, operand: str, fuel: Optional[int], show_trace: bool, bigstep: bool,
                as_json: bool) -> int:
    """Head-reduce OPERAND (a name, #id or lambda-term)."""
    session = state.session
    fuel = _fuel(fuel)
    address = session.operand(operand)
    machine = session.table.lookup(address)

    spine = None
    states = None
    if bigstep:
        outcome, spine = derive(machine, session.table, fuel)
    else:
        outcome = run(machine, session.table, fuel)
        if show_trace:
            states = [format_machine(m) for m in trace(machine, session.table, fuel)]

    if as_json:
        report = run_report(operand, str(address), outcome, states, spine)
        click.echo(report.model_dump_json(indent=2))
    else:
        for i, line in enumerate(states or []):
            click.echo(f"{i}: {line}")
        for node in spine or ():
            click.echo(f"({node.rule}) {format_machine(node.machine)}")
        click.echo(str(outcome))
        click.echo(f"=> {format_machine(outcome.machine)}")
    return EXIT_UNKNOWN if isinstance(outcome, OutOfFuel) else EXIT_OK


@cli.command("compile")
@click.argument("term")
@click.option("--ctx", "context", default="", help="Comma-separated variable context, e.g. x,y")
@command
def compile_command(state: CliState, term: str, context: str) -> int:
    """Compile a lambda-TERM under a variable context and show the machine."""
    session = state.session
    ctx = tuple(name.strip() for name in context.split(",") if name.strip())
    start = len(session.table)
    machine = compile_term(parse_term(term, session.names), ctx, session.table)
    address = session.table.intern(machine)
    click.echo(f"{address} = {format_machine(machine)}")
    created = session.table.dump_lines(start)
    if created:
        click.echo("created:")
        for line in created:
            click.echo(f"  {line}")
    return EXIT_OK


@cli.command()
@click.argument("left")
@click.argument("right")
@click.option("--mode", type=click.Choice(MODES), default="eval", show_default=True,
              help="eval: evaluation equivalence; ae: bounded applicative equivalence")
@fuel_option
@click.option("--depth", type=click.IntRange(min=0), default=None,
              help="Fresh arguments the ae mode may apply (default: ADDRVM_DEFAULT_DEPTH or 3)")
@click.option("--strict-distinct/--no-strict-distinct", default=None,
              help="ae mode: report stuck against divergent as distinct")
@click.option("--json", "as_json", is_flag=True, help="Print a JSON report")
@command
def equiv(state: CliState, left: str, right: str, mode: str, fuel: Optional[int], depth: Optional[int],
          strict_distinct: Optional[bool], as_json: bool) -> int:
    """Compare LEFT and RIGHT (names, #ids or lambda-terms)."""
    session = state.session
    a = session.operand(left)
    b = session.operand(right)
    checker = create_checker(mode, session.table, fuel=_fuel(fuel), depth=depth, strict_distinct=strict_distinct)
    verdict = checker.check(a, b)
    logger.info("equivalence checked", mode=mode, left=str(a), right=str(b), verdict=str(verdict))

    if as_json:
        click.echo(equiv_report(mode, str(a), str(b), verdict).model_dump_json(indent=2))
    else:
        click.echo(str(verdict))
        if isinstance(verdict, Distinct):
            for conflict in verdict.conflicts:
                click.echo(f"  {conflict}")
            if verdict.witness is not None:
                click.echo(f"  witness: {verdict.witness}")
            if verdict.reason is not None:
                click.echo(f"  basis: {verdict.reason}")
    return verdict_exit_code(verdict)


@cli.command()
@click.option("--context", "context_file", type=click.Path(exists=True, dir_okay=False), required=True,
              help="Session file defining the context")
@click.option("--machine", "machine_name", required=True, help="Machine to plug into the context")
@click.option("--name", "context_name", default=None, help="Context to use (default: the last one in the file)")
@fuel_option
@command
def underline(state: CliState, context_file: str, machine_name: str, context_name: Optional[str],
              fuel: Optional[int]) -> int:
    """Run a context underlined by a machine next to the plugged machine's head reduction."""
    session = state.session
    added = session.load_file(context_file)
    if context_name is None:
        contexts = [d.name for d in added if d.kind in ("hole", "context")]
        if not contexts:
            raise SessionError(f"{context_file} defines no context")
        context_name = contexts[-1]

    context = session.context(context_name)
    machine = session.machine(machine_name)
    agreed, steps = correspondence_trace(context, machine, session.extended, _fuel(fuel))
    for i, pair in enumerate(steps):
        click.echo(f"{i}: {format_extended(pair.context)}")
        click.echo(f"   [{pair.head_steps}] {format_machine(pair.plugged)}")
    click.echo("correspondence: ok" if agreed else "correspondence: mismatch")
    return EXIT_OK if agreed else EXIT_UNKNOWN


@cli.command()
@command
def dump(state: CliState) -> int:
    """Print the whole address table."""
    for line in state.session.table.dump_lines():
        click.echo(line)
    return EXIT_OK


def main() -> None:
    cli(prog_name="addrvm")


__all__ = ["cli", "main"]
