"""
Tests for progset_semantics.grammar -- regular tree grammars, validation and enumeration.
"""

import random
from pathlib import Path

import pytest

from progset_semantics.domain import StateDomain
from progset_semantics.error_codes import (
    PSEM_2001_GRAMMAR_INVALID,
    PSEM_2002_UNKNOWN_NONTERMINAL,
    PSEM_5001_ENUMERATION_CAP,
)
from progset_semantics.errors import ResourceLimitError
from progset_semantics.grammar import (
    GrammarValidationError,
    Production,
    Rtg,
    UnknownNonterminalError,
    enumerate_programs,
    find_loop_production,
    format_grammar,
    grammar_vars,
    load_grammar,
    parse_grammar,
    productive_nonterminals,
    single_program_grammar,
    useful_productions,
    validate,
)
from progset_semantics.models.domain import DomainConfig
from progset_semantics.parsing import parse_term
from progset_semantics.sampling import random_grammar, random_recursive_grammar
from progset_semantics.terms import (
    Hole,
    Sort,
    Term,
    check_sorts,
    children,
    holes,
    pretty_print,
    rebuild,
)

EVEN_EXPRESSIONS = """
nonterm E : Exp;
E ::= 0 | <E> + (1 + 1);
"""


def _make_grammar(text: str = EVEN_EXPRESSIONS) -> Rtg:
    return parse_grammar(text)


def _derives(g: Rtg, n: str, program: Term) -> bool:
    return any(_matches(g, p.template, program) for p in g.productions_of(n))


def _matches(g: Rtg, template: Term, program: Term) -> bool:
    if isinstance(template, Hole):
        return _derives(g, template.name, program)
    if type(template) is not type(program):
        return False
    inner = children(program)
    if len(children(template)) != len(inner) or rebuild(template, inner) != program:
        return False
    return all(_matches(g, t, p) for t, p in zip(children(template), inner, strict=True))


class TestParseGrammar:
    """Verify grammar-file parsing."""

    def test_start_defaults_to_first_declaration(self) -> None:
        g = _make_grammar()
        assert g.start == "E"
        assert g.sort_of("E") is Sort.EXP
        assert len(g.productions_of("E")) == 2

    def test_explicit_start(self) -> None:
        text = "nonterm A : Exp;\nnonterm S : Stmt;\nstart S;\nS ::= x := <A>;\nA ::= 1;"
        g = _make_grammar(text)
        assert g.start == "S"

    def test_load_from_file(self, evenness_grammar_file: Path) -> None:
        g = load_grammar(evenness_grammar_file)
        assert set(g.nonterminals) == {"W", "E"}
        assert g.start == "W"

    def test_format_parses_back(self, evenness_grammar_file: Path) -> None:
        g = load_grammar(evenness_grammar_file)
        assert parse_grammar(format_grammar(g)) == g

    def test_conflicting_declarations(self) -> None:
        with pytest.raises(GrammarValidationError) as exc_info:
            _make_grammar("nonterm A : Exp;\nnonterm A : Stmt;\nA ::= 1;")
        assert exc_info.value.violations[0].rule == "duplicate-declaration"


class TestValidation:
    """Verify the validity rules of grammars."""

    def test_undeclared_hole(self) -> None:
        with pytest.raises(GrammarValidationError) as exc_info:
            _make_grammar("nonterm S : Stmt;\nS ::= x := <E>;")
        assert exc_info.value.error_code == PSEM_2001_GRAMMAR_INVALID
        assert [v.rule for v in exc_info.value.violations] == ["undeclared-nonterminal"]

    def test_hole_of_wrong_sort(self) -> None:
        with pytest.raises(GrammarValidationError) as exc_info:
            _make_grammar("nonterm S : Stmt;\nnonterm B : BExp;\nS ::= x := <B>;\nB ::= t;")
        assert exc_info.value.violations[0].rule == "sort-mismatch"
        assert exc_info.value.violations[0].production == "S ::= x := <B>"

    def test_template_of_wrong_sort(self) -> None:
        with pytest.raises(GrammarValidationError) as exc_info:
            _make_grammar("nonterm E : Exp;\nE ::= x := 0;")
        assert exc_info.value.violations[0].rule == "sort-mismatch"

    def test_validation_can_be_skipped(self) -> None:
        g = parse_grammar("nonterm S : Stmt;\nS ::= x := <E>;", validate_grammar=False)
        assert len(validate(g)) == 1

    def test_undeclared_start(self) -> None:
        g = Rtg({"S": Sort.STMT}, "T", ())
        assert validate(g)[0].rule == "undeclared-start"

    def test_unknown_nonterminal_query(self) -> None:
        with pytest.raises(UnknownNonterminalError) as exc_info:
            _make_grammar().sort_of("Q")
        assert exc_info.value.error_code == PSEM_2002_UNKNOWN_NONTERMINAL


class TestLanguages:
    """Verify productivity, usefulness and variable analysis."""

    def test_unproductive_nonterminal(self) -> None:
        g = _make_grammar(
            "nonterm S : Stmt;\nnonterm L : Stmt;\nS ::= x := 0 | <L>;\nL ::= <L>; x := 1;"
        )
        assert productive_nonterminals(g) == frozenset({"S"})
        assert [str(p) for p in useful_productions(g, "S")] == ["S ::= x := 0"]

    def test_grammar_vars(self) -> None:
        g = _make_grammar("nonterm S : Stmt;\nnonterm E : Exp;\nS ::= x := <E>;\nE ::= y | 0;")
        assert grammar_vars(g, "S") == frozenset({"x", "y"})
        assert grammar_vars(g, "E") == frozenset({"y"})

    def test_find_loop_production(self, evenness_grammar_file: Path) -> None:
        g = load_grammar(evenness_grammar_file)
        loop = find_loop_production(g, "W")
        assert loop is not None
        assert loop.lhs == "W"
        assert find_loop_production(g, "E") is None

    def test_extend_and_fresh_name(self) -> None:
        g = _make_grammar()
        name = g.fresh_name("E")
        assert name == "E'"
        extended = g.extend(name, Sort.EXP, [parse_term("1")], start=True)
        assert extended.start == "E'"
        assert extended.productions_of("E'") == (Production("E'", parse_term("1")),)

    def test_single_program_grammar(self) -> None:
        c = parse_term("x := 1")
        g = single_program_grammar(c, Sort.STMT)
        assert enumerate_programs(g, "C", 2) == [c]


class TestEnumeration:
    """Verify bounded enumeration of languages."""

    def test_depth_two_has_leaf_productions_only(self) -> None:
        assert [pretty_print(t) for t in enumerate_programs(_make_grammar(), "E", 2)] == ["0"]

    def test_depth_three(self) -> None:
        programs = enumerate_programs(_make_grammar(), "E", 3)
        assert [pretty_print(t) for t in programs] == ["0", "0 + (1 + 1)"]

    def test_depth_grows_language(self) -> None:
        assert len(enumerate_programs(_make_grammar(), "E", 6)) == 5

    def test_loop_uses_smaller_subderivations(self, evenness_grammar_file: Path) -> None:
        g = load_grammar(evenness_grammar_file)
        assert [pretty_print(t) for t in enumerate_programs(g, "W", 3)] == [
            "while x < 0 do { x := x + 1 }"
        ]
        assert len(enumerate_programs(g, "W", 4)) == 2

    def test_depth_below_one_rejected(self) -> None:
        with pytest.raises(ValueError):
            enumerate_programs(_make_grammar(), "E", 0)

    def test_cap_is_reported(self) -> None:
        with pytest.raises(ResourceLimitError) as exc_info:
            enumerate_programs(_make_grammar(), "E", 10, max_programs=3)
        assert exc_info.value.error_code == PSEM_5001_ENUMERATION_CAP
        assert exc_info.value.resource == "max_programs"

    def test_unproductive_language_is_empty(self) -> None:
        g = parse_grammar("nonterm S : Stmt;\nnonterm EMPTY : Stmt;\nS ::= x := 0;")
        assert enumerate_programs(g, "EMPTY", 5) == []


class TestEnumerationProperties:
    """Enumerated programs are derivable, well sorted and grow with depth."""

    def _samples(self) -> list[tuple[Rtg, str, int]]:
        """Grammars with the deepest enumeration that stays small."""
        domain = StateDomain(DomainConfig(lo=0, hi=2, tracked_vars=["x", "y"]))
        drawn = [random_grammar(random.Random(seed)) for seed in range(6)]
        drawn += [random_recursive_grammar(random.Random(seed), domain) for seed in range(3)]
        return [(_make_grammar(), "E", 6)] + [
            (s.grammar, s.nonterminal, min(6, s.depth + 1)) for s in drawn
        ]

    def test_programs_are_derivable(self) -> None:
        for g, n, depth in self._samples():
            for program in enumerate_programs(g, n, depth):
                assert _derives(g, n, program), pretty_print(program)

    def test_programs_are_closed_and_well_sorted(self) -> None:
        for g, n, depth in self._samples():
            for program in enumerate_programs(g, n, depth):
                assert holes(program) == ()
                assert check_sorts(program) is g.sort_of(n)

    def test_depth_monotone(self) -> None:
        for g, n, deepest in self._samples():
            previous: set[Term] = set()
            for depth in range(1, deepest + 1):
                current = set(enumerate_programs(g, n, depth))
                assert previous <= current
                previous = current

    def test_derivable_rejects_foreign_program(self) -> None:
        g = _make_grammar()
        assert not _derives(g, "E", parse_term("1 + 1"))
        assert _derives(g, "E", parse_term("0 + (1 + 1)"))
