"""
Tests for progset_semantics.granularity -- comparing semantics on finite families.
"""

import pytest

from progset_semantics.domain import DVState, StateDomain
from progset_semantics.grammar import parse_grammar
from progset_semantics.granularity import (
    FamilyMember,
    SemanticsId,
    default_probe,
    denotation_table,
    denote,
    refines_on_family,
)
from progset_semantics.models.domain import DomainConfig
from progset_semantics.models.triples import EngineKind, SemanticsMode

EQUAL_COLLECTING = """
nonterm S1 : Stmt;
nonterm S2 : Stmt;
S1 ::= x := 1 | x := 1 + 1;
S2 ::= if x == 0 then { x := 1 } else { x := 1 + 1 }
     | if not x == 0 then { x := 1 } else { x := 1 + 1 };
"""


def _domain() -> StateDomain:
    return StateDomain(DomainConfig(lo=0, hi=2, tracked_vars=["x"]))


def _family() -> list[FamilyMember]:
    g = parse_grammar(EQUAL_COLLECTING)
    return [FamilyMember("S1", g, "S1"), FamilyMember("S2", g, "S2")]


def _oracle(mode: SemanticsMode) -> SemanticsId:
    return SemanticsId(mode, EngineKind.ORACLE, 4)


class TestRefinement:
    """Verify witnesses and their absence."""

    def test_collecting_is_coarser_than_aware(self) -> None:
        result = refines_on_family(
            _family(),
            _oracle(SemanticsMode.AGNOSTIC_YELLOW),
            _oracle(SemanticsMode.AWARE),
            _domain(),
        )
        assert result.witness == ("S1", "S2")
        assert not result.ok
        assert result.as_dict()["verdict"] == "refuted"

    def test_aware_refines_collecting(self) -> None:
        result = refines_on_family(
            _family(),
            _oracle(SemanticsMode.AWARE),
            _oracle(SemanticsMode.AGNOSTIC_YELLOW),
            _domain(),
        )
        assert result.ok
        assert result.as_dict()["verdict"] == "no counterexample on this family"

    def test_vector_separates_the_pair(self) -> None:
        domain = _domain()
        vector = SemanticsId(SemanticsMode.VECTOR_YELLOW)
        family = _family()
        probe = default_probe(vector, domain, 2)
        assert denote(vector, family[0], probe, domain) != denote(vector, family[1], probe, domain)

    def test_explicit_probes(self) -> None:
        domain = _domain()
        zero = domain.make_state()
        result = refines_on_family(
            _family(),
            _oracle(SemanticsMode.AGNOSTIC_YELLOW),
            _oracle(SemanticsMode.AWARE),
            domain,
            probes={SemanticsMode.AGNOSTIC_YELLOW: [zero], SemanticsMode.AWARE: [zero]},
        )
        assert result.ok


class TestDenotations:
    """Verify probes and denotation tables."""

    def test_state_probe(self) -> None:
        domain = _domain()
        probe = default_probe(SemanticsId(SemanticsMode.AGNOSTIC_GREEN), domain)
        assert len(probe) == 3 * 3 * 2

    def test_vector_probe(self) -> None:
        domain = _domain()
        probe = default_probe(SemanticsId(SemanticsMode.VECTOR_GREEN), domain, 2)
        assert len(probe) == 1 + 3 + 9
        assert probe[0] == DVState(())

    def test_aware_table_on_empty_probe(self) -> None:
        assert denotation_table(_oracle(SemanticsMode.AWARE), _family()[0], [], _domain()) == []

    def test_agnostic_rows(self) -> None:
        domain = _domain()
        zero = domain.make_state()
        yellow = _oracle(SemanticsMode.AGNOSTIC_YELLOW)
        rows = denotation_table(yellow, _family()[0], [zero], domain)
        assert rows == [
            [
                domain.state_to_json(zero),
                [domain.state_to_json(domain.make_state({"x": k})) for k in (1, 2)],
            ]
        ]

    @pytest.mark.parametrize("mode", list(SemanticsMode))
    def test_fingerprint_is_stable(self, mode: SemanticsMode) -> None:
        domain = _domain()
        sem = _oracle(mode)
        probe = default_probe(sem, domain, 1)
        member = _family()[1]
        first = denote(sem, member, probe, domain)
        assert first == denote(sem, member, probe, domain)
        assert len(first) == 64
