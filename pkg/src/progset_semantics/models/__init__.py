"""
Pydantic models for program-set-semantics.

All data contracts that cross a file or CLI boundary are defined here and
re-exported for convenient access via ``from progset_semantics.models import ...``.

Modules:
    domain -- Finite state domain and resource caps.
    triples -- Semantics modes, engines and triple files.
    reports -- Run reports emitted by the CLI.
"""

from progset_semantics.models.domain import DomainCaps, DomainConfig
from progset_semantics.models.reports import CheckResult, RunCounters, RunReport, SuiteResult
from progset_semantics.models.triples import EngineKind, SemanticsMode, TripleSpec

__all__ = [
    # Domain models
    "DomainCaps",
    "DomainConfig",
    # Triple models
    "EngineKind",
    "SemanticsMode",
    "TripleSpec",
    # Report models
    "CheckResult",
    "RunCounters",
    "RunReport",
    "SuiteResult",
]
