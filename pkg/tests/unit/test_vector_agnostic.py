"""
Tests for progset_semantics.vector_agnostic -- compositional vector-state semantics.
"""

import itertools
import random

import pytest

from progset_semantics.concrete import EnumerationOracle
from progset_semantics.domain import DVState, StateDomain
from progset_semantics.error_codes import PSEM_4002_VECTOR_SHAPE, PSEM_5006_VECTOR_CAP
from progset_semantics.errors import ResourceLimitError
from progset_semantics.grammar import Rtg, parse_grammar
from progset_semantics.models.domain import DomainCaps, DomainConfig
from progset_semantics.vector_agnostic import (
    VectorEngine,
    VectorShapeError,
    canonicalize,
    eval_vector,
    expand,
    filter_vector,
    interleave,
    negate,
)

PLUS_N = """
nonterm S : Stmt;
nonterm N : Exp;
S ::= x := x + <N>;
N ::= 1 | <N> + 1;
"""

EVENNESS = """
nonterm W : Stmt;
nonterm E : Exp;
W ::= while x < <E> do { x := x + 1 };
E ::= 0 | <E> + (1 + 1);
"""

SHRINKING = """
nonterm W : Stmt;
W ::= while x < 1 + 1 do { x := x - 1 };
"""

BRANCHES = """
nonterm S : Stmt;
nonterm B : BExp;
S ::= if <B> then { x := x + 1 } else { x := 0 };
B ::= x < 1 + 1 | x == 1 + 1 + 1;
"""


def _grammar(text: str) -> Rtg:
    return parse_grammar(text)


def _xs(domain: StateDomain, *values: int) -> tuple:
    return tuple(domain.make_state({"x": k}) for k in values)


def _x_rows(domain: StateDomain, vectors: frozenset) -> set[tuple[int, ...]]:
    return {tuple(domain.value(s, "x") for s in v) for v in vectors}


class TestVectorHelpers:
    """Verify filtering, negation, interleaving and canonical queries."""

    def test_filter_and_negate(self, x_domain: StateDomain) -> None:
        a, b = _xs(x_domain, 1, 2)
        guards = (x_domain.subst(a, "b_t", True), b)
        assert filter_vector((a, b), guards) == (a,)
        assert filter_vector((a, b), negate(guards)) == (b,)

    def test_interleave(self, x_domain: StateDomain) -> None:
        a, b, c = _xs(x_domain, 1, 2, 3)
        guards = (x_domain.subst(a, "b_t", True), b, x_domain.subst(c, "b_t", True))
        assert interleave((a, c), (b,), guards) == (a, b, c)

    @pytest.mark.parametrize("length", range(5))
    def test_filter_then_interleave_restores(self, x_domain: StateDomain, length: int) -> None:
        entries = _xs(x_domain, 0, 1)
        guards = [x_domain.make_state({"x": k}, b_t=b) for k in (0, 2) for b in (False, True)]
        for v in itertools.product(entries, repeat=length):
            for vb in itertools.product(guards, repeat=length):
                kept, dropped = filter_vector(v, vb), filter_vector(v, negate(vb))
                assert len(kept) + len(dropped) == length
                assert interleave(kept, dropped, vb) == v

    def test_shape_errors(self, x_domain: StateDomain) -> None:
        a, b = _xs(x_domain, 1, 2)
        with pytest.raises(VectorShapeError) as exc_info:
            filter_vector((a, b), (a,))
        assert exc_info.value.error_code == PSEM_4002_VECTOR_SHAPE
        with pytest.raises(VectorShapeError):
            interleave((a, b), (), (a, b))

    def test_canonicalize_and_expand(self, x_domain: StateDomain) -> None:
        a, b, c, d = _xs(x_domain, 0, 1, 5, 6)
        canonical, index = canonicalize(DVState((a, b, a)))
        assert canonical == DVState((a, b))
        assert index == (0, 1, 0)
        assert expand(DVState((c, d)), index, 2) == DVState((c, d, c))

    def test_expand_diverging_answer(self, x_domain: StateDomain) -> None:
        a, b, c = _xs(x_domain, 0, 1, 5)
        _, index = canonicalize(DVState((a, a, b)))
        assert expand(DVState((c,), True), index, 2) == DVState((c, c), True)


class TestVectorEngine:
    """Verify compositional answers on known grammars."""

    def test_straight_line_keeps_correlation(self, x_domain: StateDomain) -> None:
        out = eval_vector(_grammar(PLUS_N), "S", [_xs(x_domain, 0, 3)], x_domain)
        assert _x_rows(x_domain, out) == {(k, min(k + 3, 8)) for k in range(1, 9)}

    def test_loop_outputs(self, x_domain: StateDomain) -> None:
        out = VectorEngine(_grammar(EVENNESS), x_domain).eval("W", [_xs(x_domain, 0, 3)])
        assert _x_rows(x_domain, out) == {(0, 3), (2, 3), (4, 4), (6, 6), (8, 8)}

    def test_loop_skipped_by_all_entries(self, x_domain: StateDomain) -> None:
        out = VectorEngine(_grammar(SHRINKING), x_domain).eval("W", [_xs(x_domain, 2, 4)])
        assert _x_rows(x_domain, out) == {(2, 4)}

    def test_diverging_entry_drops_program(self, x_domain: StateDomain) -> None:
        out = VectorEngine(_grammar(SHRINKING), x_domain).eval("W", [_xs(x_domain, 2, 4, 1)])
        assert out == frozenset()

    def test_branches_split_and_merge(self, x_domain: StateDomain) -> None:
        out = VectorEngine(_grammar(BRANCHES), x_domain).eval("S", [_xs(x_domain, 1, 3)])
        assert _x_rows(x_domain, out) == {(2, 0), (0, 4)}

    def test_duplicate_entries(self, x_domain: StateDomain) -> None:
        engine = VectorEngine(_grammar(PLUS_N), x_domain)
        out = engine.query("S", DVState(_xs(x_domain, 0, 3, 0)))
        assert all(v.entries[0] == v.entries[2] for v in out)
        assert len(out) == 8

    @pytest.mark.parametrize(
        ("text", "n"), [(EVENNESS, "W"), (BRANCHES, "S"), (PLUS_N, "S"), (SHRINKING, "W")]
    )
    def test_monotone_in_inputs(self, x_domain: StateDomain, text: str, n: str) -> None:
        grammar = _grammar(text)
        pool = [
            _xs(x_domain, *values)
            for k in range(3)
            for values in itertools.product((0, 1, 3, 5), repeat=k)
        ]
        rng = random.Random(0)
        for _ in range(10):
            first, second = rng.sample(pool, 4), rng.sample(pool, 4)
            small = eval_vector(grammar, n, first, x_domain)
            both = eval_vector(grammar, n, first + second, x_domain)
            assert small <= both
            assert both == small | eval_vector(grammar, n, second, x_domain)

    @pytest.mark.parametrize("values", [(0,), (1, 2), (3, 0, 5)])
    def test_agrees_with_oracle(self, x_domain: StateDomain, values: tuple[int, ...]) -> None:
        grammar = _grammar(EVENNESS)
        inputs = [_xs(x_domain, *values)]
        oracle = EnumerationOracle(grammar, x_domain, 8)
        assert VectorEngine(grammar, x_domain).eval("W", inputs) == oracle.vector("W", inputs)

    def test_vector_cap(self) -> None:
        domain = StateDomain(
            DomainConfig(lo=0, hi=3, tracked_vars=["x"], caps=DomainCaps(max_vector_len=1))
        )
        with pytest.raises(ResourceLimitError) as exc_info:
            VectorEngine(_grammar(PLUS_N), domain).query("S", DVState(_xs(domain, 0, 1)))
        assert exc_info.value.error_code == PSEM_5006_VECTOR_CAP
