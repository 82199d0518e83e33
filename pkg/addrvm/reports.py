"""
Report Models

Pydantic models for the structured (``--json``) output of CLI commands.
"""

from typing import Optional

from pydantic import BaseModel, Field

from .session import Definition
from .textual import format_machine
from .verdicts import Distinct, EquivUpTo, Unknown, Verdict, format_path
from .vm import Cycle, Final, Outcome, RuleApplication, Stuck


class DefinitionReport(BaseModel):
    """Status of one session definition."""

    name: str = Field(..., description="Defined name")
    kind: str = Field(..., description="machine, term, hole or context")
    line: int = Field(..., description="Source line")
    ok: bool = Field(..., description="Whether the definition was accepted")
    address: Optional[str] = Field(None, description="Bound address when accepted")
    error: Optional[str] = Field(None, description="Why the definition was rejected")

    @classmethod
    def from_definition(cls, definition: Definition) -> "DefinitionReport":
        return cls(
            name=definition.name,
            kind=definition.kind,
            line=definition.line,
            ok=definition.ok,
            address=None if definition.address is None else str(definition.address),
            error=definition.error,
        )


class ValidationReport(BaseModel):
    """Result of validating a session file."""

    file: str = Field(..., description="Validated file")
    ok: bool = Field(..., description="True iff every definition was accepted")
    definitions: list[DefinitionReport] = Field(default_factory=list)


class RuleReport(BaseModel):
    rule: str = Field(..., description="Big-step rule concluding this node")
    machine: str = Field(..., description="Machine in the conclusion")


class RunReport(BaseModel):
    """Result of running a machine."""

    operand: str = Field(..., description="Operand as given")
    address: str = Field(..., description="Address of the start state")
    outcome: str = Field(..., description="final, stuck, cycle, recurrence or out_of_fuel")
    steps: int = Field(..., description="Head steps taken (derivation height for bigstep)")
    machine: str = Field(..., description="Last state reached")
    trace: Optional[list[str]] = Field(None, description="Head-reduction sequence, when requested")
    derivation: Optional[list[RuleReport]] = Field(None, description="Big-step spine, conclusion first")


class ConflictReport(BaseModel):
    path: str = Field(..., description="Register/tape position, e.g. R1.T0")
    left: str
    right: str
    detail: str


class WitnessReport(BaseModel):
    arguments: list[str] = Field(default_factory=list, description="Fresh arguments applied, in order")
    left: str = Field(..., description="Observation on the left side")
    right: str = Field(..., description="Observation on the right side")


class EquivReport(BaseModel):
    """Result of an equivalence check."""

    mode: str = Field(..., description="eval or ae")
    left: str = Field(..., description="Address of the left operand")
    right: str = Field(..., description="Address of the right operand")
    verdict: str = Field(..., description="equiv, equiv(depth=D), distinct or unknown(reason)")
    depth: Optional[int] = Field(None, description="Depth budget of an EquivUpTo verdict")
    reason: Optional[str] = Field(
        None,
        description="Why the check was inconclusive, or what a divergence-based distinct verdict relied on",
    )
    conflicts: list[ConflictReport] = Field(default_factory=list)
    witness: Optional[WitnessReport] = None


def outcome_kind(outcome: Outcome) -> str:
    if isinstance(outcome, Cycle):
        return "cycle" if outcome.exact else "recurrence"
    if isinstance(outcome, Final):
        return "final"
    if isinstance(outcome, Stuck):
        return "stuck"
    return "out_of_fuel"


def run_report(
    operand: str,
    address: str,
    outcome: Outcome,
    trace: Optional[list[str]] = None,
    spine: Optional[tuple[RuleApplication, ...]] = None,
) -> RunReport:
    derivation = None
    if spine is not None:
        derivation = [RuleReport(rule=node.rule, machine=format_machine(node.machine)) for node in spine]
    return RunReport(
        operand=operand,
        address=address,
        outcome=outcome_kind(outcome),
        steps=outcome.steps,
        machine=format_machine(outcome.machine),
        trace=trace,
        derivation=derivation,
    )


def equiv_report(mode: str, left: str, right: str, verdict: Verdict) -> EquivReport:
    report = EquivReport(mode=mode, left=left, right=right, verdict=str(verdict))
    if isinstance(verdict, EquivUpTo):
        report.depth = verdict.depth
    elif isinstance(verdict, Distinct):
        report.conflicts = [
            ConflictReport(path=format_path(c.path), left=str(c.left), right=str(c.right), detail=c.detail)
            for c in verdict.conflicts
        ]
        if verdict.witness is not None:
            report.witness = WitnessReport(
                arguments=[str(a) for a in verdict.witness.arguments],
                left=verdict.witness.left,
                right=verdict.witness.right,
            )
        report.reason = verdict.reason
    elif isinstance(verdict, Unknown):
        report.reason = verdict.reason
    return report
