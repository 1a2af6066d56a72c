"""
Domain configuration models for program-set-semantics.

A :class:`DomainConfig` fixes the finite value range, the tracked program
variables and the resource caps every engine enforces.  It is also the
shape of the JSON config file accepted by ``--config``.
"""

import re
from collections.abc import Iterable

from pydantic import BaseModel, Field, field_validator, model_validator

_NAME = re.compile(r"[a-z][a-zA-Z0-9_]*")
_RESERVED = frozenset({"e_t", "b_t"})


class DomainCaps(BaseModel):
    """Resource caps for one run.

    Attributes:
        max_vector_len: Longest input vector the vector engines accept.
        max_trace_len: Longest loop trace segment; ``None`` derives it as
            the number of states plus one.
        max_table_entries: Largest number of memoised table entries.
        max_states: Largest state enumeration that may be materialised.
        max_programs: Largest bounded enumeration of programs.
        step_budget: Loop iterations allowed per single-program evaluation.
    """

    max_vector_len: int = Field(default=6, ge=0)
    max_trace_len: int | None = Field(default=None, ge=1)
    max_table_entries: int = Field(default=500_000, ge=1)
    max_states: int = Field(default=200_000, ge=1)
    max_programs: int = Field(default=100_000, ge=0)
    step_budget: int = Field(default=5_000_000, ge=1)


class DomainConfig(BaseModel):
    """The finite state domain.

    Attributes:
        lo: Smallest representable integer.
        hi: Largest representable integer.
        tracked_vars: Program variables present in every state, in order.
        caps: Resource caps.
    """

    lo: int = -8
    hi: int = 8
    tracked_vars: list[str] = Field(default_factory=list)
    caps: DomainCaps = Field(default_factory=DomainCaps)

    @field_validator("tracked_vars")
    @classmethod
    def names_must_be_program_variables(cls, v: list[str]) -> list[str]:
        """Tracked names are identifiers, unique, and never reserved slots."""
        seen: set[str] = set()
        for name in v:
            if name in _RESERVED:
                raise ValueError(f"'{name}' is a reserved state component")
            if not _NAME.fullmatch(name):
                raise ValueError(f"'{name}' is not a variable identifier")
            if name in seen:
                raise ValueError(f"'{name}' is tracked twice")
            seen.add(name)
        return v

    @model_validator(mode="after")
    def range_must_be_nonempty(self) -> "DomainConfig":
        """``lo`` must not exceed ``hi``."""
        if self.lo > self.hi:
            raise ValueError(f"lo ({self.lo}) must not exceed hi ({self.hi})")
        return self

    def with_variables(self, names: Iterable[str]) -> "DomainConfig":
        """Return a copy that also tracks ``names`` (appended in sorted order)."""
        extra = sorted(set(names) - set(self.tracked_vars))
        if not extra:
            return self
        return self.model_copy(update={"tracked_vars": [*self.tracked_vars, *extra]})
