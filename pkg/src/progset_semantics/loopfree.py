"""
Compositional program-agnostic semantics for loop-free grammars.

Each nonterminal's denotation is computed from its productions alone, one
equation per (nonterminal, input state), and solved by
:class:`~progset_semantics.fixpoint.WorklistSolver` so recursive
nonterminals such as ``E ::= 0 | <E> + 1`` converge from the empty set.

The same reading cannot be extended to loops: two guard sets with equal
denotations can yield loops with different denotations.
:func:`noncompositionality_witness` rebuilds that counterexample.
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Any

from progset_semantics.concrete import EnumerationOracle
from progset_semantics.domain import State, StateDomain
from progset_semantics.error_codes import PSEM_4001_LOOP_DETECTED
from progset_semantics.errors import SemanticsError
from progset_semantics.fixpoint import Reader, WorklistSolver
from progset_semantics.grammar import (
    Production,
    Rtg,
    find_loop_production,
    grammar_vars,
    parse_grammar,
)
from progset_semantics.logging_config import get_structured_logger
from progset_semantics.models.domain import DomainConfig
from progset_semantics.terms import (
    Add,
    And,
    Assign,
    Eq,
    FalseC,
    Hole,
    IfThenElse,
    Lt,
    Not,
    One,
    Seq,
    Sub,
    Term,
    TrueC,
    VarRef,
    While,
    Zero,
)

logger: logging.LoggerAdapter[Any] = get_structured_logger(__name__)

AgKey = tuple[str, State]
StateSet = frozenset[State]


class LoopDetectedError(SemanticsError):
    """Raised when the loop-free engine meets a grammar that reaches While.

    Attributes:
        production: The offending production, printed.
    """

    def __init__(self, production: Production) -> None:
        self.production = str(production)
        super().__init__(
            PSEM_4001_LOOP_DETECTED,
            f"the loop-free engine cannot evaluate '{self.production}'",
        )


class LoopFreeEngine:
    """Compositional agnostic semantics over a loop-free grammar.

    Args:
        grammar: A valid grammar.
        domain: The state domain.
    """

    def __init__(self, grammar: Rtg, domain: StateDomain) -> None:
        self.grammar = grammar
        self.domain = domain
        self.solver: WorklistSolver[AgKey, StateSet] = WorklistSolver(
            self._equation,
            frozenset(),
            frozenset.union,
            domain.caps.max_table_entries,
            name="agnostic",
        )

    def _equation(self, key: AgKey, read: Reader[AgKey, StateSet]) -> StateSet:
        n, sigma = key
        out: set[State] = set()
        for p in self.grammar.productions_of(n):
            out |= self._eval(p.template, sigma, read)
        return frozenset(out)

    def _ints(self, e: Term, sigma: State, read: Reader[AgKey, StateSet]) -> set[int]:
        return {s.e_t for s in self._eval(e, sigma, read)}

    def _bools(self, b: Term, sigma: State, read: Reader[AgKey, StateSet]) -> set[bool]:
        return {s.b_t for s in self._eval(b, sigma, read)}

    def _eval(self, t: Term, sigma: State, read: Reader[AgKey, StateSet]) -> set[State]:
        clamp = self.domain.clamp
        match t:
            case Hole(name):
                return set(read((name, sigma)))
            case Zero() | One():
                return {State(sigma.h, clamp(1 if isinstance(t, One) else 0), sigma.b_t)}
            case VarRef(name):
                return {State(sigma.h, self.domain.value(sigma, name), sigma.b_t)}
            case Add(left, right) | Sub(left, right):
                sign = 1 if isinstance(t, Add) else -1
                rights = self._ints(right, sigma, read)
                return {
                    State(sigma.h, clamp(a + sign * b), sigma.b_t)
                    for a in self._ints(left, sigma, read)
                    for b in rights
                }
            case TrueC() | FalseC():
                return {State(sigma.h, sigma.e_t, isinstance(t, TrueC))}
            case Not(operand):
                return {State(sigma.h, sigma.e_t, not b) for b in self._bools(operand, sigma, read)}
            case And(left, right):
                rights = self._bools(right, sigma, read)
                return {
                    State(sigma.h, sigma.e_t, a and b)
                    for a in self._bools(left, sigma, read)
                    for b in rights
                }
            case Lt(left, right) | Eq(left, right):
                rights = self._ints(right, sigma, read)
                less = isinstance(t, Lt)
                return {
                    State(sigma.h, sigma.e_t, a < b if less else a == b)
                    for a in self._ints(left, sigma, read)
                    for b in rights
                }
            case Assign(var, exp):
                return {self.domain.subst(sigma, var, a) for a in self._ints(exp, sigma, read)}
            case Seq(first, second):
                out: set[State] = set()
                for mid in self._eval(first, sigma, read):
                    out |= self._eval(second, mid, read)
                return out
            case IfThenElse(cond, then_branch, else_branch):
                guards = self._bools(cond, sigma, read)
                result: set[State] = set()
                if True in guards:
                    result |= self._eval(then_branch, sigma, read)
                if False in guards:
                    result |= self._eval(else_branch, sigma, read)
                return result
            case While():
                raise LoopDetectedError(Production("?", t))
        raise TypeError(f"cannot evaluate {t!r}")

    def eval(self, n: str, inputs: Iterable[State]) -> StateSet:
        """Denotation of ``n`` on a set of states.

        Raises:
            LoopDetectedError: If a production reachable from ``n`` contains While.
        """
        self.grammar.sort_of(n)
        loop = find_loop_production(self.grammar, n)
        if loop is not None:
            raise LoopDetectedError(loop)
        self.domain.require_tracked(grammar_vars(self.grammar, n))
        out: set[State] = set()
        for sigma in inputs:
            out |= self.solver.solve((n, sigma))
        return frozenset(out)


def eval_agnostic_compositional(
    grammar: Rtg, n: str, inputs: Iterable[State], domain: StateDomain
) -> StateSet:
    """One-shot wrapper around :meth:`LoopFreeEngine.eval`."""
    return LoopFreeEngine(grammar, domain).eval(n, inputs)


# ---------------------------------------------------------------------------
# Noncompositionality counterexample
# ---------------------------------------------------------------------------

GUARD_LOOPS = """
nonterm W1 : Stmt;
nonterm W2 : Stmt;
nonterm B1 : BExp;
nonterm B2 : BExp;
start W1;
W1 ::= while <B1> do { x := x + 1 };
W2 ::= while <B2> do { x := x + 1 };
B1 ::= x == 1 | not (x == 1);
B2 ::= x == 1 + 1 | not (x == 1 + 1);
"""


@dataclass(frozen=True)
class NoncompositionalityReport:
    """Outcome of the guard-set counterexample.

    Attributes:
        guards_agree: B1 and B2 have equal oracle denotations on every state.
        guards_agree_compositional: The same, computed by :class:`LoopFreeEngine`.
        w1_outputs: Sorted x values W1 can produce from the states with x = 0.
        w2_outputs: The same for W2.
    """

    guards_agree: bool
    guards_agree_compositional: bool
    w1_outputs: tuple[int, ...]
    w2_outputs: tuple[int, ...]

    @property
    def loops_differ(self) -> bool:
        return self.w1_outputs != self.w2_outputs

    @property
    def confirmed(self) -> bool:
        return self.guards_agree and self.guards_agree_compositional and self.loops_differ

    def as_dict(self) -> dict[str, Any]:
        return {
            "guards_agree": self.guards_agree,
            "guards_agree_compositional": self.guards_agree_compositional,
            "w1_outputs_x": list(self.w1_outputs),
            "w2_outputs_x": list(self.w2_outputs),
            "loops_differ": self.loops_differ,
            "confirmed": self.confirmed,
        }


def noncompositionality_witness(config: DomainConfig | None = None) -> NoncompositionalityReport:
    """Show that equal guard denotations do not determine loop denotations.

    The domain defaults to ``[0, 8]``; ``x`` is always the only tracked variable.
    """
    base = config or DomainConfig(lo=0, hi=8)
    domain = StateDomain(base.model_copy(update={"tracked_vars": ["x"]}))
    grammar = parse_grammar(GUARD_LOOPS)
    oracle = EnumerationOracle(grammar, domain, depth=3)
    engine = LoopFreeEngine(grammar, domain)

    every_state = domain.enumerate_states()
    guards_agree = all(
        oracle.agnostic("B1", [s]) == oracle.agnostic("B2", [s]) for s in every_state
    )
    guards_agree_compositional = all(
        engine.eval("B1", [s]) == engine.eval("B2", [s]) for s in every_state
    )
    start = [s for s in every_state if domain.value(s, "x") == 0]

    def xs(n: str) -> tuple[int, ...]:
        return tuple(sorted({domain.value(s, "x") for s in oracle.agnostic(n, start)}))

    report = NoncompositionalityReport(guards_agree, guards_agree_compositional, xs("W1"), xs("W2"))
    logger.info("Noncompositionality witness computed", extra={"extra_data": report.as_dict()})
    return report
