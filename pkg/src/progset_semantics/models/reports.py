"""
Run report models for program-set-semantics.

Every CLI command answers with a :class:`RunReport`; its JSON form is the
command's stdout payload and the file written by ``--save``.
"""

from typing import Any

from pydantic import BaseModel, Field


class RunCounters(BaseModel):
    """Resource counters gathered during one run.

    Attributes:
        states_visited: States enumerated or evaluated.
        table_entries: Memoised denotation-table entries.
        traces_explored: Loop trace nodes expanded by f_while.
        programs_enumerated: Programs produced by bounded enumeration.
        wall_time_s: Elapsed seconds; only set with ``--timing``.
    """

    states_visited: int = 0
    table_entries: int = 0
    traces_explored: int = 0
    programs_enumerated: int = 0
    wall_time_s: float | None = None


class RunReport(BaseModel):
    """The machine-readable outcome of one CLI command.

    Attributes:
        command: The command name, e.g. ``"check"``.
        arguments: Echo of the command's arguments.
        config_digest: Digest of the domain config, engine and depth.
        exit_code: Process exit code the command ends with.
        result: Command-specific payload.
        counters: Resource counters.
    """

    command: str
    arguments: dict[str, Any] = Field(default_factory=dict)
    config_digest: str
    exit_code: int = 0
    result: Any = None
    counters: RunCounters = Field(default_factory=RunCounters)


class CheckResult(BaseModel):
    """One named check inside a replication suite.

    Attributes:
        name: Short identifier of the check.
        passed: Whether the observed value matched the expected one.
        detail: Observed values, counts and expectations.
    """

    name: str
    passed: bool
    detail: dict[str, Any] = Field(default_factory=dict)


class SuiteResult(BaseModel):
    """Outcome of a replication suite.

    Attributes:
        suite: The suite name.
        passed: Every check passed.
        checks: The individual checks, in execution order.
    """

    suite: str
    passed: bool
    checks: list[CheckResult] = Field(default_factory=list)

    @property
    def failures(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]
