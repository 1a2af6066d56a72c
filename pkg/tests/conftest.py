"""
Shared test fixtures for program-set-semantics.

Provides reusable fixtures for:
- Small state domains over one or two variables
- Grammar files written to tmp_path
- Module-level singleton cleanup between tests
"""

from collections.abc import Callable, Generator
from pathlib import Path

import pytest

from progset_semantics.domain import StateDomain
from progset_semantics.models.domain import DomainConfig

EVENNESS_GRAMMAR = """\
# Loops bounded by an even number.
nonterm W : Stmt;
nonterm E : Exp;
start W;
W ::= while x < <E> do { x := x + 1 };
E ::= 0 | <E> + (1 + 1);
"""

# ---------------------------------------------------------------------------
# Domain fixtures
# ---------------------------------------------------------------------------


@pytest.fixture()
def x_domain() -> StateDomain:
    """A domain tracking ``x`` over [0, 8]."""
    return StateDomain(DomainConfig(lo=0, hi=8, tracked_vars=["x"]))


@pytest.fixture()
def xy_domain() -> StateDomain:
    """A domain tracking ``x`` and ``y`` over [0, 3]."""
    return StateDomain(DomainConfig(lo=0, hi=3, tracked_vars=["x", "y"]))


# ---------------------------------------------------------------------------
# File fixtures
# ---------------------------------------------------------------------------


@pytest.fixture()
def write_file(tmp_path: Path) -> Callable[[str, str], Path]:
    """Return a helper that writes ``text`` to ``tmp_path / name``."""

    def _write(name: str, text: str) -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write


@pytest.fixture()
def evenness_grammar_file(write_file: Callable[[str, str], Path]) -> Path:
    return write_file("evenness.rtg", EVENNESS_GRAMMAR)


# ---------------------------------------------------------------------------
# Singleton cleanup
# ---------------------------------------------------------------------------


@pytest.fixture(autouse=True)
def _reset_global_singletons(monkeypatch: pytest.MonkeyPatch) -> Generator[None, None, None]:
    """Reset the config singleton and keep ``PSEM_`` variables out of tests."""
    import os

    import progset_semantics.config as config_mod

    for key in list(os.environ):
        if key.startswith("PSEM_"):
            monkeypatch.delenv(key, raising=False)
    config_mod._config = None

    yield

    config_mod._config = None
