"""
Tests for progset_semantics.predicates -- formulas, predicate JSON and expansion.
"""

import pytest

from progset_semantics.domain import DVState, StateDomain
from progset_semantics.error_codes import PSEM_5007_PREDICATE_CAP, PSEM_6001_PREDICATE_SYNTAX
from progset_semantics.errors import ResourceLimitError
from progset_semantics.predicates import (
    Compare,
    Explicit,
    FAnd,
    FNot,
    LastBool,
    LastInt,
    Mod,
    Num,
    Pointwise,
    PredicateSyntaxError,
    Var,
    formula_vars,
    holds,
    parse_formula,
    pred_from_json,
    pred_to_json,
    pred_to_states,
    pred_to_vectors,
    pred_vars,
    state_matcher,
    vector_matcher,
)


class TestFormulas:
    """Verify parsing and evaluation of state formulas."""

    def test_modulus(self) -> None:
        assert parse_formula("x % 2 == 0") == Compare("==", Mod(Var("x"), 2), Num(0))

    def test_connectives(self) -> None:
        formula = parse_formula("x == 0 and not (y < 3)")
        assert formula == FAnd(
            Compare("==", Var("x"), Num(0)), FNot(Compare("<", Var("y"), Num(3)))
        )
        assert formula_vars(formula) == frozenset({"x", "y"})

    def test_reserved_slots(self) -> None:
        formula = parse_formula("b_t == f || e_t >= -1")
        assert formula_vars(formula) == frozenset()
        assert parse_formula("b_t") == LastBool(True)
        assert parse_formula("e_t != 1") == Compare("!=", LastInt(), Num(1))

    def test_holds(self, xy_domain: StateDomain) -> None:
        formula = parse_formula("x % 2 == 1 && y >= x")
        assert holds(formula, xy_domain, xy_domain.make_state({"x": 1, "y": 3}))
        assert not holds(formula, xy_domain, xy_domain.make_state({"x": 1, "y": 0}))
        assert not holds(formula, xy_domain, xy_domain.make_state({"x": 2, "y": 3}))

    def test_holds_on_last_bool(self, xy_domain: StateDomain) -> None:
        formula = parse_formula("b_t == t")
        assert holds(formula, xy_domain, xy_domain.make_state(b_t=True))
        assert not holds(formula, xy_domain, xy_domain.make_state())

    @pytest.mark.parametrize("text", ["x <", "x % 0 == 1", "x = 1", ""])
    def test_malformed(self, text: str) -> None:
        with pytest.raises(PredicateSyntaxError) as exc_info:
            parse_formula(text)
        assert exc_info.value.error_code == PSEM_6001_PREDICATE_SYNTAX


class TestPredicateJson:
    """Verify the JSON forms of predicates."""

    def test_formula_string(self) -> None:
        pred = pred_from_json("x == 0")
        assert isinstance(pred, Pointwise)
        assert pred_to_json(pred) == "x == 0"

    def test_pointwise_object(self) -> None:
        obj = {"pointwise": "x < 2", "min_len": 1, "max_len": 2, "diverges_ok": True}
        pred = pred_from_json(obj)
        assert isinstance(pred, Pointwise)
        assert (pred.min_len, pred.max_len, pred.diverges_ok) == (1, 2, True)
        assert pred_to_json(pred) == obj

    def test_explicit(self) -> None:
        pred = pred_from_json({"explicit": [[{"x": 1}], []]})
        assert isinstance(pred, Explicit)
        assert pred_vars(pred) == frozenset({"x"})
        assert pred_to_json(pred) == {"explicit": [[{"x": 1}], []]}

    @pytest.mark.parametrize(
        "obj",
        [
            {"pointwise": "x < 2", "min_len": 3, "max_len": 1},
            {"pointwise": "x < 2", "min_len": -1},
            {"pointwise": "x < 2", "extra": 1},
            {"pointwise": 3},
            {"explicit": "no"},
            42,
        ],
    )
    def test_malformed(self, obj: object) -> None:
        with pytest.raises(PredicateSyntaxError):
            pred_from_json(obj)


class TestExpansion:
    """Verify finite expansion and membership tests."""

    def test_pointwise_vectors(self, x_domain: StateDomain) -> None:
        vectors = pred_to_vectors(pred_from_json("x < 2"), x_domain)
        # the empty vector plus every good state (x in {0, 1}, any e_t, any b_t)
        assert len(vectors) == 1 + 2 * 9 * 2
        assert DVState(()) in vectors

    def test_length_bounds(self, x_domain: StateDomain) -> None:
        pred = pred_from_json({"pointwise": "x == 0 and e_t == 0 and not b_t", "min_len": 2})
        vectors = pred_to_vectors(pred, x_domain, max_len=3)
        assert sorted(len(v) for v in vectors) == [2, 3]

    def test_expansion_cap(self, x_domain: StateDomain) -> None:
        with pytest.raises(ResourceLimitError) as exc_info:
            pred_to_vectors(pred_from_json("x < 2"), x_domain, max_len=2, max_vectors=10)
        assert exc_info.value.error_code == PSEM_5007_PREDICATE_CAP

    def test_states(self, x_domain: StateDomain) -> None:
        assert len(pred_to_states(pred_from_json("x == 3"), x_domain)) == 9 * 2

    def test_explicit_decoding(self, x_domain: StateDomain) -> None:
        pred = pred_from_json({"explicit": [[{"x": 1}], {"entries": [], "diverges": True}]})
        assert pred_to_vectors(pred, x_domain) == frozenset(
            {DVState((x_domain.make_state({"x": 1}),)), DVState((), True)}
        )
        assert pred_to_states(pred, x_domain) == frozenset({x_domain.make_state({"x": 1})})

    def test_vector_matcher(self, x_domain: StateDomain) -> None:
        a = x_domain.make_state({"x": 1})
        strict = vector_matcher(pred_from_json({"pointwise": "x == 1", "max_len": 1}), x_domain)
        assert strict(DVState((a,)))
        assert not strict(DVState((a, a)))
        assert not strict(DVState((a,), True))
        lenient = pred_from_json({"pointwise": "x == 1", "diverges_ok": True})
        relaxed = vector_matcher(lenient, x_domain)
        assert relaxed(DVState((a, a), True))

    def test_state_matcher_divergence(self, x_domain: StateDomain) -> None:
        assert not state_matcher(pred_from_json("x == 1"), x_domain)(None)
        ok = pred_from_json({"pointwise": "x == 1", "diverges_ok": True})
        assert state_matcher(ok, x_domain)(None)
        assert state_matcher(ok, x_domain)(x_domain.make_state({"x": 1}))
