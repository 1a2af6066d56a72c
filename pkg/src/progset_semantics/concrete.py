"""
Single-program evaluation and enumeration-based oracle semantics.

:class:`Interpreter` runs one program on one state with saturating
arithmetic.  Divergence is detected exactly: within one activation of a
loop, reaching a loop-head state a second time means the loop never
exits, because programs are deterministic and the state space is finite.

:class:`EnumerationOracle` lifts the interpreter to sets of programs by
enumerating a grammar up to a depth.  It is the ground truth every
compositional engine is tested against.
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Any

from progset_semantics.domain import (
    UP,
    Divergence,
    DVState,
    RawDVector,
    State,
    StateDomain,
    VState,
)
from progset_semantics.error_codes import PSEM_5002_STEP_BUDGET, PSEM_5006_VECTOR_CAP
from progset_semantics.errors import ResourceLimitError
from progset_semantics.grammar import Rtg, enumerate_programs, grammar_vars
from progset_semantics.logging_config import get_structured_logger
from progset_semantics.terms import (
    Add,
    And,
    Assign,
    Eq,
    FalseC,
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
from progset_semantics.vector_aware import reduce, truncate

logger: logging.LoggerAdapter[Any] = get_structured_logger(__name__)

Outcome = State | Divergence


class _Diverged(Exception):
    """Internal signal: the current evaluation does not terminate."""


class _OutOfFuel(Exception):
    """Internal signal: a loop activation used up its fuel."""


class Interpreter:
    """Big-step evaluator for single G_imp programs.

    Args:
        domain: The state domain; all integer writes are clamped to it.
        step_budget: Loop iterations allowed per evaluation. Defaults to
            the domain's cap.
    """

    def __init__(self, domain: StateDomain, step_budget: int | None = None) -> None:
        self.domain = domain
        self.step_budget = step_budget if step_budget is not None else domain.caps.step_budget
        self._steps = 0

    # -- expressions -------------------------------------------------------

    def _int(self, e: Term, sigma: State) -> int:
        clamp = self.domain.clamp
        match e:
            case Zero():
                return clamp(0)
            case One():
                return clamp(1)
            case VarRef(name):
                return sigma.h[self.domain.index_of(name)]
            case Add(left, right):
                return clamp(self._int(left, sigma) + self._int(right, sigma))
            case Sub(left, right):
                return clamp(self._int(left, sigma) - self._int(right, sigma))
        raise TypeError(f"not an integer expression: {e!r}")

    def _bool(self, b: Term, sigma: State) -> bool:
        match b:
            case TrueC():
                return True
            case FalseC():
                return False
            case Not(operand):
                return not self._bool(operand, sigma)
            case And(left, right):
                # both operands are evaluated on sigma; neither can diverge
                return self._bool(left, sigma) and self._bool(right, sigma)
            case Lt(left, right):
                return self._int(left, sigma) < self._int(right, sigma)
            case Eq(left, right):
                return self._int(left, sigma) == self._int(right, sigma)
        raise TypeError(f"not a Boolean expression: {b!r}")

    # -- statements --------------------------------------------------------

    def _tick(self) -> None:
        self._steps += 1
        if self._steps > self.step_budget:
            logger.warning(
                "Step budget exhausted",
                extra={"extra_data": {"budget": self.step_budget}},
            )
            raise ResourceLimitError(PSEM_5002_STEP_BUDGET, "step_budget", self.step_budget)

    def _exec(self, c: Term, sigma: State, fuel: int | None) -> State:
        match c:
            case Assign(var, exp):
                return self.domain.subst(sigma, var, self._int(exp, sigma))
            case Seq(first, second):
                return self._exec(second, self._exec(first, sigma, fuel), fuel)
            case IfThenElse(cond, then_branch, else_branch):
                branch = then_branch if self._bool(cond, sigma) else else_branch
                return self._exec(branch, sigma, fuel)
            case While(cond, body):
                seen: set[State] = set()
                visits = 0
                while self._bool(cond, sigma):
                    if fuel is None:
                        if sigma in seen:
                            raise _Diverged
                        seen.add(sigma)
                    else:
                        visits += 1
                        if visits > fuel:
                            raise _OutOfFuel
                    self._tick()
                    sigma = self._exec(body, sigma, fuel)
                return sigma
            case VarRef() | Zero() | One() | Add() | Sub():
                return State(sigma.h, self._int(c, sigma), sigma.b_t)
            case TrueC() | FalseC() | Not() | And() | Lt() | Eq():
                return State(sigma.h, sigma.e_t, self._bool(c, sigma))
        raise TypeError(f"cannot evaluate {c!r}")

    # -- public API --------------------------------------------------------

    def eval_green(self, c: Term, sigma: State) -> Outcome:
        """Run ``c`` on ``sigma``; return the final state or the divergence marker.

        Raises:
            ResourceLimitError: If the step budget is exhausted.
        """
        self._steps = 0
        try:
            return self._exec(c, sigma, None)
        except _Diverged:
            return UP

    def eval_yellow(self, c: Term, sigma: State) -> frozenset[State]:
        """The divergence-agnostic result: a singleton, or empty on divergence."""
        out = self.eval_green(c, sigma)
        return frozenset() if isinstance(out, Divergence) else frozenset({out})

    def eval_with_fuel(self, c: Term, sigma: State, fuel: int) -> State | None:
        """Reference evaluator bounding each loop activation to ``fuel`` iterations.

        Returns:
            The final state, or ``None`` when some activation ran out of fuel.
        """
        self._steps = 0
        try:
            return self._exec(c, sigma, fuel)
        except _OutOfFuel:
            return None

    def run_vector(self, c: Term, v: Iterable[State]) -> RawDVector:
        """Entrywise green results of ``c`` on every entry of ``v``."""
        return tuple(self.eval_green(c, sigma) for sigma in v)


@dataclass(frozen=True, slots=True)
class BehaviorTable:
    """The extensional behaviour of one program on a fixed list of inputs."""

    inputs: tuple[State, ...]
    outputs: tuple[Outcome, ...]

    def __getitem__(self, sigma: State) -> Outcome:
        return self.outputs[self.inputs.index(sigma)]

    def restricted(self, probe: Iterable[State]) -> "BehaviorTable":
        wanted = tuple(sorted(set(probe)))
        return BehaviorTable(wanted, tuple(self[s] for s in wanted))


def _outcome_key(o: Outcome) -> tuple[int, Any]:
    return (1, ()) if isinstance(o, Divergence) else (0, o)


def sorted_outcomes(outcomes: Iterable[Outcome]) -> list[Outcome]:
    return sorted(outcomes, key=_outcome_key)


class EnumerationOracle:
    """Oracle semantics of sets of programs by bounded enumeration.

    Args:
        grammar: A valid grammar.
        domain: The state domain; must track the grammar's variables.
        depth: Derivation depth of the enumeration.
    """

    def __init__(self, grammar: Rtg, domain: StateDomain, depth: int) -> None:
        self.grammar = grammar
        self.domain = domain
        self.depth = depth
        self.interpreter = Interpreter(domain)
        self._programs: dict[str, list[Term]] = {}
        self.programs_enumerated = 0

    def programs(self, n: str) -> list[Term]:
        """The enumerated language of ``n`` (cached)."""
        if n not in self._programs:
            found = enumerate_programs(self.grammar, n, self.depth, self.domain.caps.max_programs)
            self.domain.require_tracked(grammar_vars(self.grammar, n))
            self._programs[n] = found
            self.programs_enumerated += len(found)
        return self._programs[n]

    def _check_length(self, v: DVState | VState) -> None:
        length = len(v.entries) if isinstance(v, DVState) else len(v)
        cap = self.domain.caps.max_vector_len
        if length > cap:
            raise ResourceLimitError(
                PSEM_5006_VECTOR_CAP, "max_vector_len", cap, f"input of length {length}"
            )

    def agnostic(self, n: str, inputs: Iterable[State], green: bool = False) -> frozenset[Outcome]:
        """Union of every program's result on every input.

        Yellow drops divergence; green keeps the marker.
        """
        states = list(inputs)
        out: set[Outcome] = set()
        for c in self.programs(n):
            for sigma in states:
                result = self.interpreter.eval_green(c, sigma)
                if green or not isinstance(result, Divergence):
                    out.add(result)
        return frozenset(out)

    def aware(self, n: str, inputs: Iterable[State] | None = None) -> frozenset[BehaviorTable]:
        """The distinct behaviour tables of the programs of ``n``.

        ``inputs`` defaults to every state over the variables of ``n``.
        """
        if inputs is None:
            domain_states = tuple(self.domain.enumerate_states(grammar_vars(self.grammar, n)))
        else:
            domain_states = tuple(sorted(set(inputs)))
        return frozenset(
            BehaviorTable(
                domain_states,
                tuple(self.interpreter.eval_green(c, s) for s in domain_states),
            )
            for c in self.programs(n)
        )

    def vector(self, n: str, inputs: Iterable[VState]) -> frozenset[VState]:
        """Divergence-agnostic vector semantics.

        Programs that diverge on any entry contribute nothing.
        """
        out: set[VState] = set()
        vectors = list(inputs)
        for v in vectors:
            self._check_length(v)
        for c in self.programs(n):
            for v in vectors:
                raw = self.interpreter.run_vector(c, v)
                if not any(isinstance(e, Divergence) for e in raw):
                    out.add(tuple(e for e in raw if isinstance(e, State)))
        return frozenset(out)

    def bad_rows(self, n: str, v: VState) -> frozenset[RawDVector]:
        """Entrywise green results per program, divergence marks left in place."""
        self._check_length(v)
        return frozenset(self.interpreter.run_vector(c, v) for c in self.programs(n))

    def vector_green(self, n: str, inputs: Iterable[DVState]) -> frozenset[DVState]:
        """Divergence-aware vector semantics: truncate at the first divergence, then reduce."""
        collected: set[DVState] = set()
        vectors = list(inputs)
        for v in vectors:
            self._check_length(v)
        for c in self.programs(n):
            for v in vectors:
                raw = self.interpreter.run_vector(c, v.entries)
                if v.diverges:
                    raw = raw + (UP,)
                collected |= truncate({raw})
        return reduce(collected)


def saturation_depth(
    grammar: Rtg, domain: StateDomain, start: int = 2, max_depth: int = 8
) -> int | None:
    """Smallest depth from ``start`` at which enumeration shows every behaviour.

    Behaviour tables are taken over every state of ``domain``.  A program's
    table is fixed by its children's tables, so once no nonterminal gains a
    table from depth ``d`` to ``d + 1`` none gains one later: the depth-``d``
    oracle then equals the oracle over the whole, possibly infinite, language.

    Returns:
        The depth, or ``None`` if some nonterminal still gains tables at ``max_depth``.

    Raises:
        ResourceLimitError: If an enumeration exceeds ``max_programs``.
    """
    states = domain.enumerate_states()
    names = sorted(grammar.nonterminals)

    def tables(depth: int) -> dict[str, frozenset[BehaviorTable]]:
        oracle = EnumerationOracle(grammar, domain, depth)
        return {m: oracle.aware(m, states) for m in names}

    current = tables(start)
    for depth in range(start, max_depth):
        following = tables(depth + 1)
        if following == current:
            return depth
        current = following
    return None
