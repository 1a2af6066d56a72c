"""
Tests for progset_semantics.concrete -- single-program interpreter and the enumeration oracle.
"""

import random

import pytest

from progset_semantics.concrete import (
    BehaviorTable,
    EnumerationOracle,
    Interpreter,
    saturation_depth,
    sorted_outcomes,
)
from progset_semantics.domain import UP, DVState, StateDomain
from progset_semantics.error_codes import PSEM_5002_STEP_BUDGET, PSEM_5006_VECTOR_CAP
from progset_semantics.errors import ResourceLimitError
from progset_semantics.grammar import enumerate_programs, parse_grammar
from progset_semantics.models.domain import DomainCaps, DomainConfig
from progset_semantics.parsing import parse_term
from progset_semantics.sampling import random_grammar
from progset_semantics.terms import Term

EQUAL_COLLECTING = """
nonterm S1 : Stmt;
nonterm S2 : Stmt;
S1 ::= x := 1 | x := 1 + 1;
S2 ::= if x == 0 then { x := 1 } else { x := 1 + 1 }
     | if not x == 0 then { x := 1 } else { x := 1 + 1 };
"""

EVENNESS = """
nonterm W : Stmt;
nonterm E : Exp;
W ::= while x < <E> do { x := x + 1 };
E ::= 0 | <E> + (1 + 1);
"""

DIVERGENCE_PAIR = """
nonterm S : Stmt;
S ::= while x == 1 do { x := x } | while x == 1 + 1 do { x := x };
"""

LOOPY = """
nonterm S : Stmt;
nonterm B : BExp;
nonterm E : Exp;
S ::= while <B> do { <S> } | x := <E> | y := <E>
    | if <B> then { <S> } else { x := y };
B ::= x < y | not x == y | x == 0 | t;
E ::= x + 1 | y - 1 | x + y | 0;
"""


def _xs(domain: StateDomain, *values: int) -> tuple:
    return tuple(domain.make_state({"x": k}) for k in values)


class TestInterpreter:
    """Verify single-program evaluation with saturation and divergence."""

    def test_assignment_saturates(self, x_domain: StateDomain) -> None:
        sigma = x_domain.make_state({"x": 8})
        out = Interpreter(x_domain).eval_green(parse_term("x := x + 1"), sigma)
        assert out == x_domain.make_state({"x": 8})

    def test_subtraction_saturates_at_lo(self, x_domain: StateDomain) -> None:
        out = Interpreter(x_domain).eval_green(parse_term("x := x - 1"), x_domain.make_state())
        assert out == x_domain.make_state({"x": 0})

    def test_loop_terminates(self, x_domain: StateDomain) -> None:
        loop = parse_term("while x < 1 + 1 + 1 do { x := x + 1 }")
        out = Interpreter(x_domain).eval_green(loop, x_domain.make_state())
        assert out == x_domain.make_state({"x": 3})

    def test_revisited_loop_head_diverges(self, x_domain: StateDomain) -> None:
        loop = parse_term("while x < 1 + 1 do { x := x - 1 }")
        interpreter = Interpreter(x_domain)
        assert interpreter.eval_green(loop, x_domain.make_state({"x": 1})) is UP
        assert interpreter.eval_yellow(loop, x_domain.make_state({"x": 1})) == frozenset()

    def test_loop_skipped(self, x_domain: StateDomain) -> None:
        loop = parse_term("while x < 1 + 1 do { x := x - 1 }")
        sigma = x_domain.make_state({"x": 3})
        assert Interpreter(x_domain).eval_yellow(loop, sigma) == frozenset({sigma})

    def test_statements_keep_expression_slots(self, x_domain: StateDomain) -> None:
        sigma = x_domain.make_state({"x": 2}, e_t=5, b_t=True)
        out = Interpreter(x_domain).eval_green(parse_term("x := x + 1"), sigma)
        assert out == x_domain.make_state({"x": 3}, e_t=5, b_t=True)

    def test_expression_program_sets_e_t(self, x_domain: StateDomain) -> None:
        sigma = x_domain.make_state({"x": 2})
        out = Interpreter(x_domain).eval_green(parse_term("x + 1"), sigma)
        assert out == x_domain.make_state({"x": 2}, e_t=3)

    def test_boolean_program_sets_b_t(self, x_domain: StateDomain) -> None:
        sigma = x_domain.make_state({"x": 0})
        out = Interpreter(x_domain).eval_green(parse_term("x < 1"), sigma)
        assert out == x_domain.make_state({"x": 0}, b_t=True)

    def test_fuel_bounded_reference(self, x_domain: StateDomain) -> None:
        loop = parse_term("while x < 1 + 1 + 1 do { x := x + 1 }")
        interpreter = Interpreter(x_domain)
        assert interpreter.eval_with_fuel(loop, x_domain.make_state(), 2) is None
        assert interpreter.eval_with_fuel(loop, x_domain.make_state(), 3) == x_domain.make_state(
            {"x": 3}
        )

    def test_step_budget(self, x_domain: StateDomain) -> None:
        loop = parse_term("while x < 1 + 1 + 1 do { x := x + 1 }")
        with pytest.raises(ResourceLimitError) as exc_info:
            Interpreter(x_domain, step_budget=2).eval_green(loop, x_domain.make_state())
        assert exc_info.value.error_code == PSEM_5002_STEP_BUDGET

    def test_run_vector(self, x_domain: StateDomain) -> None:
        loop = parse_term("while x == 1 do { x := x }")
        raw = Interpreter(x_domain).run_vector(loop, _xs(x_domain, 0, 1))
        assert raw == (x_domain.make_state({"x": 0}), UP)

    def test_sorted_outcomes_puts_divergence_last(self, x_domain: StateDomain) -> None:
        a, b = _xs(x_domain, 1, 0)
        assert sorted_outcomes([UP, a, b]) == [b, a, UP]


class TestEnumerationOracle:
    """Verify the oracle semantics of sets of programs."""

    def test_evenness_outputs(self, x_domain: StateDomain) -> None:
        oracle = EnumerationOracle(parse_grammar(EVENNESS), x_domain, 8)
        out = oracle.agnostic("W", [x_domain.make_state()])
        assert out == frozenset(_xs(x_domain, 0, 2, 4, 6, 8))

    def test_programs_are_cached(self, x_domain: StateDomain) -> None:
        oracle = EnumerationOracle(parse_grammar(EVENNESS), x_domain, 4)
        assert oracle.programs("E") is oracle.programs("E")
        assert oracle.programs_enumerated == 3

    def test_equal_collecting_different_tables(self, x_domain: StateDomain) -> None:
        oracle = EnumerationOracle(parse_grammar(EQUAL_COLLECTING), x_domain, 5)
        inputs = _xs(x_domain, 0, 1)
        assert oracle.agnostic("S1", inputs) == oracle.agnostic("S2", inputs)
        tables_1 = {t.outputs for t in oracle.aware("S1", inputs)}
        tables_2 = {t.outputs for t in oracle.aware("S2", inputs)}
        assert tables_1 == {_xs(x_domain, 1, 1), _xs(x_domain, 2, 2)}
        assert tables_2 == {_xs(x_domain, 1, 2), _xs(x_domain, 2, 1)}

    def test_yellow_drops_and_green_keeps_divergence(self, x_domain: StateDomain) -> None:
        oracle = EnumerationOracle(parse_grammar(DIVERGENCE_PAIR), x_domain, 5)
        inputs = _xs(x_domain, 1)
        assert oracle.agnostic("S", inputs) == frozenset(inputs)
        assert oracle.agnostic("S", inputs, green=True) == frozenset({inputs[0], UP})

    def test_vector_drops_diverging_programs(self, x_domain: StateDomain) -> None:
        oracle = EnumerationOracle(parse_grammar(DIVERGENCE_PAIR), x_domain, 5)
        assert oracle.vector("S", [_xs(x_domain, 1, 2)]) == frozenset()
        assert oracle.vector("S", [_xs(x_domain, 0, 3)]) == frozenset({_xs(x_domain, 0, 3)})

    def test_bad_rows_and_green_vector(self, x_domain: StateDomain) -> None:
        oracle = EnumerationOracle(parse_grammar(DIVERGENCE_PAIR), x_domain, 5)
        one, two = _xs(x_domain, 1, 2)
        assert oracle.bad_rows("S", (one, two)) == frozenset({(UP, two), (one, UP)})
        green = oracle.vector_green("S", [DVState((one, two))])
        assert green == frozenset({DVState((), True)})

    def test_diverging_input_stays_diverging(self, x_domain: StateDomain) -> None:
        oracle = EnumerationOracle(parse_grammar(DIVERGENCE_PAIR), x_domain, 5)
        zero = x_domain.make_state()
        assert oracle.vector_green("S", [DVState((zero,), True)]) == frozenset(
            {DVState((zero,), True)}
        )

    def test_vector_length_cap(self) -> None:
        domain = StateDomain(
            DomainConfig(lo=0, hi=3, tracked_vars=["x"], caps=DomainCaps(max_vector_len=1))
        )
        oracle = EnumerationOracle(parse_grammar(DIVERGENCE_PAIR), domain, 5)
        with pytest.raises(ResourceLimitError) as exc_info:
            oracle.vector("S", [_xs(domain, 0, 1)])
        assert exc_info.value.error_code == PSEM_5006_VECTOR_CAP


class TestBehaviorTable:
    """Verify lookup and restriction of behaviour tables."""

    def test_lookup_and_restrict(self, x_domain: StateDomain) -> None:
        a, b, c = _xs(x_domain, 0, 1, 2)
        table = BehaviorTable((a, b, c), (b, UP, c))
        assert table[b] is UP
        assert table.restricted([c, a]) == BehaviorTable((a, c), (b, c))


class TestDivergenceAgainstFuel:
    """Loop-head revisits diverge exactly when |states| + 1 iterations run out."""

    @pytest.fixture()
    def small_domain(self) -> StateDomain:
        return StateDomain(DomainConfig(lo=0, hi=2, tracked_vars=["x", "y"]))

    def _compare(self, domain: StateDomain, programs: list[Term]) -> tuple[int, int]:
        interpreter = Interpreter(domain)
        fuel = domain.state_count(domain.variables) + 1
        diverged = finished = 0
        for c in programs:
            for sigma in domain.enumerate_states():
                green = interpreter.eval_green(c, sigma)
                fueled = interpreter.eval_with_fuel(c, sigma, fuel)
                if green is UP:
                    assert fueled is None, f"{c} on {domain.describe(sigma)}"
                    diverged += 1
                else:
                    assert fueled == green, f"{c} on {domain.describe(sigma)}"
                    finished += 1
        return diverged, finished

    def test_enumerated_loopy_programs(self, small_domain: StateDomain) -> None:
        programs = enumerate_programs(parse_grammar(LOOPY), "S", 4)
        diverged, finished = self._compare(small_domain, programs)
        assert diverged > 0
        assert finished > 0

    @pytest.mark.parametrize("seed", range(6))
    def test_seeded_random_programs(self, seed: int, small_domain: StateDomain) -> None:
        sample = random_grammar(random.Random(seed), max_programs=20)
        programs = enumerate_programs(sample.grammar, sample.nonterminal, sample.depth)
        self._compare(small_domain, programs)


class TestSaturationDepth:
    """Verify the depth at which enumeration stops gaining behaviours."""

    def test_evenness_saturates(self, x_domain: StateDomain) -> None:
        assert saturation_depth(parse_grammar(EVENNESS), x_domain) == 7

    def test_oracle_exact_from_saturation(self, x_domain: StateDomain) -> None:
        g = parse_grammar(EVENNESS)
        states = x_domain.enumerate_states()
        at = EnumerationOracle(g, x_domain, 7).aware("W", states)
        assert EnumerationOracle(g, x_domain, 10).aware("W", states) == at

    def test_not_saturated_within_bound(self, x_domain: StateDomain) -> None:
        assert saturation_depth(parse_grammar(EVENNESS), x_domain, max_depth=5) is None

    def test_finite_language_saturates_early(self, x_domain: StateDomain) -> None:
        assert saturation_depth(parse_grammar(EQUAL_COLLECTING), x_domain) == 2
