"""
Unrealizability triples, PBE checks and the grammar-disjunction rule.

A triple ``{|P|} N {|Q|}`` claims that every program derivable from ``N``
maps every input satisfying ``P`` to an output satisfying ``Q``.  It is
decided by computing the denotation of ``N`` on the (finite) extension of
``P`` and testing each output against ``Q``.  Violations come with the
smallest witness: the shortest input first, then the smallest output.
"""

import json
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from progset_semantics.concrete import BehaviorTable, EnumerationOracle
from progset_semantics.config import get_config
from progset_semantics.domain import (
    Divergence,
    DVState,
    State,
    StateDomain,
    sorted_vectors,
    vector_key,
)
from progset_semantics.error_codes import PSEM_6002_TRIPLE_INVALID, PSEM_6003_SPLIT_INVALID
from progset_semantics.errors import SemanticsError
from progset_semantics.grammar import Rtg, grammar_vars, load_grammar
from progset_semantics.logging_config import get_structured_logger
from progset_semantics.loopfree import LoopFreeEngine
from progset_semantics.models.domain import DomainConfig
from progset_semantics.models.reports import RunCounters
from progset_semantics.models.triples import EngineKind, SemanticsMode, TripleSpec
from progset_semantics.predicates import (
    Pred,
    pred_from_json,
    pred_to_json,
    pred_to_states,
    pred_to_vectors,
    pred_vars,
    state_matcher,
    vector_matcher,
)
from progset_semantics.vector_agnostic import VectorEngine
from progset_semantics.vector_aware import GreenVectorEngine

logger: logging.LoggerAdapter[Any] = get_structured_logger(__name__)


class TripleError(SemanticsError):
    """Raised for malformed triple files or mode-incompatible triples."""

    def __init__(self, message: str) -> None:
        super().__init__(PSEM_6002_TRIPLE_INVALID, message)


class InvalidSplitError(SemanticsError):
    """Raised when a grammar-disjunction split does not cover the nonterminal."""

    def __init__(self, message: str) -> None:
        super().__init__(PSEM_6003_SPLIT_INVALID, message)


# ---------------------------------------------------------------------------
# Engine dispatch
# ---------------------------------------------------------------------------


class SemanticsRunner:
    """Answers denotation queries for one grammar with the selected engine.

    Engines are created lazily and kept, so their memo tables are shared
    across queries.

    Args:
        grammar: A valid grammar.
        domain: The state domain.
        engine: Compositional engines or the enumeration oracle.
        depth: Oracle derivation depth; defaults to ``default_depth``.
    """

    def __init__(
        self,
        grammar: Rtg,
        domain: StateDomain,
        engine: EngineKind = EngineKind.COMPOSITIONAL,
        depth: int | None = None,
    ) -> None:
        self.grammar = grammar
        self.domain = domain
        self.engine = engine
        self.depth = depth if depth is not None else get_config().default_depth
        self._oracle: EnumerationOracle | None = None
        self._loopfree: LoopFreeEngine | None = None
        self._vector: VectorEngine | None = None
        self._green: GreenVectorEngine | None = None
        self.states_visited = 0

    @property
    def oracle(self) -> EnumerationOracle:
        if self._oracle is None:
            self._oracle = EnumerationOracle(self.grammar, self.domain, self.depth)
        return self._oracle

    def _loopfree_engine(self) -> LoopFreeEngine:
        if self._loopfree is None:
            self._loopfree = LoopFreeEngine(self.grammar, self.domain)
        return self._loopfree

    def vector_engine(self, green: bool) -> VectorEngine:
        if green:
            if self._green is None:
                self._green = GreenVectorEngine(self.grammar, self.domain)
            return self._green
        if self._vector is None:
            self._vector = VectorEngine(self.grammar, self.domain)
        return self._vector

    def agnostic(self, n: str, sigma: State, green: bool = False) -> frozenset[State | Divergence]:
        """Outputs of ``n`` on one state; green keeps the divergence marker.

        The compositional engine handles loop-free grammars only, where
        nothing diverges and both readings coincide.
        """
        self.states_visited += 1
        if self.engine is EngineKind.ORACLE:
            return self.oracle.agnostic(n, [sigma], green=green)
        return frozenset(self._loopfree_engine().eval(n, [sigma]))

    def vector(self, n: str, v: DVState, green: bool = False) -> frozenset[DVState]:
        """Outputs of ``n`` on one vector in the yellow or green vector semantics."""
        self.states_visited += len(v)
        if self.engine is EngineKind.ORACLE:
            if green:
                return self.oracle.vector_green(n, [v])
            return frozenset(DVState(u) for u in self.oracle.vector(n, [v.entries]))
        return self.vector_engine(green).query(n, v)

    def aware(self, n: str, probe: Iterable[State]) -> frozenset[BehaviorTable]:
        """Program-aware denotation restricted to ``probe``; always enumerated."""
        states = list(probe)
        self.states_visited += len(states)
        return self.oracle.aware(n, states)

    def counters(self) -> RunCounters:
        engines = [e for e in (self._vector, self._green) if e is not None]
        entries = sum(len(e.solver) for e in engines)
        if self._loopfree is not None:
            entries += len(self._loopfree.solver)
        return RunCounters(
            states_visited=self.states_visited,
            table_entries=entries,
            traces_explored=sum(e.traces_explored for e in engines),
            programs_enumerated=self._oracle.programs_enumerated if self._oracle else 0,
        )


# ---------------------------------------------------------------------------
# Triples
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Triple:
    """A checkable triple.

    Attributes:
        pre: Precondition.
        grammar: The grammar holding the set of programs.
        nonterminal: The nonterminal whose language is checked.
        post: Postcondition.
        mode: Semantics mode; never ``aware``.
        engine: Engine selector.
        depth: Oracle depth, if given.
    """

    pre: Pred
    grammar: Rtg
    nonterminal: str
    post: Pred
    mode: SemanticsMode = SemanticsMode.VECTOR_YELLOW
    engine: EngineKind = EngineKind.COMPOSITIONAL
    depth: int | None = None

    def __post_init__(self) -> None:
        if self.mode is SemanticsMode.AWARE:
            raise TripleError("mode 'aware' is not a triple mode")
        self.grammar.sort_of(self.nonterminal)

    def with_nonterminal(self, n: str) -> "Triple":
        return Triple(self.pre, self.grammar, n, self.post, self.mode, self.engine, self.depth)

    def variables(self) -> frozenset[str]:
        names = grammar_vars(self.grammar, self.nonterminal)
        return names | pred_vars(self.pre) | pred_vars(self.post)


@dataclass(frozen=True)
class Witness:
    """A concrete counterexample: an input and an output it produces."""

    input: DVState
    output: DVState


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check.

    Attributes:
        holds: Whether the checked claim holds.
        witness: Evidence, when the check produced some.
        inputs_checked: Number of inputs the denotation was computed on.
    """

    holds: bool
    witness: Witness | None = None
    inputs_checked: int = 0

    def as_dict(self, domain: StateDomain) -> dict[str, Any]:
        out: dict[str, Any] = {"holds": self.holds, "inputs_checked": self.inputs_checked}
        if self.witness is not None:
            out["witness"] = {
                "input": domain.vector_to_json(self.witness.input),
                "output": domain.vector_to_json(self.witness.output),
            }
        return out


def triple_domain(triple: Triple, base: DomainConfig) -> StateDomain:
    """The domain ``base`` extended with every variable the triple mentions."""
    return StateDomain(base.with_variables(triple.variables()))


def _as_vector(o: State | Divergence) -> DVState:
    return DVState((), True) if isinstance(o, Divergence) else DVState((o,))


def check_triple(
    triple: Triple,
    domain: StateDomain,
    pred_max_len: int = 1,
    max_pred_vectors: int = 200_000,
    runner: SemanticsRunner | None = None,
) -> Verdict:
    """Decide ``{|pre|} nonterminal {|post|}`` in the triple's mode.

    Agnostic modes read both predicates as sets of states; a diverging
    output is reported as the bare diverging vector.  The yellow vector
    mode ignores diverging inputs.

    Args:
        triple: The triple.
        domain: A domain tracking every variable the triple mentions.
        pred_max_len: Longest precondition vector when ``pre`` sets no bound.
        max_pred_vectors: Cap on the precondition's extension.
        runner: Engine dispatcher to reuse; built from the triple otherwise.

    Returns:
        The verdict; a violated triple carries its minimal witness.
    """
    runner = runner or SemanticsRunner(triple.grammar, domain, triple.engine, triple.depth)
    n = triple.nonterminal
    mode = triple.mode
    checked = 0
    if mode.is_vector:
        matches = vector_matcher(triple.post, domain)
        inputs = sorted_vectors(pred_to_vectors(triple.pre, domain, pred_max_len, max_pred_vectors))
        for v in inputs:
            if v.diverges and not mode.is_green:
                continue
            checked += 1
            bad = [u for u in runner.vector(n, v, green=mode.is_green) if not matches(u)]
            if bad:
                verdict = Verdict(False, Witness(v, min(bad, key=vector_key)), checked)
                break
        else:
            verdict = Verdict(True, None, checked)
    else:
        accepts = state_matcher(triple.post, domain)
        for sigma in sorted(pred_to_states(triple.pre, domain)):
            checked += 1
            outputs = runner.agnostic(n, sigma, green=mode.is_green)
            bad = [
                _as_vector(o)
                for o in outputs
                if not accepts(None if isinstance(o, Divergence) else o)
            ]
            if bad:
                witness = Witness(DVState((sigma,)), min(bad, key=vector_key))
                verdict = Verdict(False, witness, checked)
                break
        else:
            verdict = Verdict(True, None, checked)
    logger.info(
        "Triple checked",
        extra={
            "extra_data": {
                "nonterminal": n,
                "mode": mode.value,
                "engine": triple.engine.value,
                "holds": verdict.holds,
                "inputs_checked": checked,
            }
        },
    )
    return verdict


def load_triple(path: str | Path) -> Triple:
    """Read a triple file; the grammar path is relative to the file's directory.

    Raises:
        TripleError: If the file is not a valid triple.
    """
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
        spec = TripleSpec.model_validate(raw)
    except (OSError, json.JSONDecodeError, ValidationError) as exc:
        raise TripleError(f"cannot read triple file '{path}': {exc}") from exc
    grammar_path = Path(spec.grammar_path)
    if not grammar_path.is_absolute():
        grammar_path = path.parent / grammar_path
    try:
        grammar = load_grammar(grammar_path)
    except OSError as exc:
        raise TripleError(f"cannot read grammar '{grammar_path}': {exc}") from exc
    return Triple(
        pre=pred_from_json(spec.pre),
        grammar=grammar,
        nonterminal=grammar.require(spec.nonterminal),
        post=pred_from_json(spec.post),
        mode=spec.mode,
        engine=spec.engine,
        depth=spec.depth,
    )


def triple_to_json(triple: Triple) -> dict[str, Any]:
    return {
        "pre": pred_to_json(triple.pre),
        "nonterminal": triple.nonterminal,
        "post": pred_to_json(triple.post),
        "mode": triple.mode.value,
        "engine": triple.engine.value,
        "depth": triple.depth,
    }


# ---------------------------------------------------------------------------
# Programming by example
# ---------------------------------------------------------------------------


def pbe_unrealizable(
    grammar: Rtg,
    n: str,
    examples: Sequence[tuple[State, State]],
    domain: StateDomain,
    engine: EngineKind = EngineKind.COMPOSITIONAL,
    depth: int | None = None,
) -> Verdict:
    """Decide whether no single program of ``n`` matches every example.

    The examples become one input vector and one target vector; the set is
    unrealizable exactly when the target is not in the vector denotation.
    Complete states are compared, including ``e_t`` and ``b_t``.

    Returns:
        ``holds`` is true when unrealizable.  A realizable verdict carries
        the example vectors as its witness.

    Raises:
        TripleError: If there are no examples.
    """
    if not examples:
        raise TripleError("a PBE problem needs at least one example")
    v = DVState(tuple(i for i, _ in examples))
    target = DVState(tuple(o for _, o in examples))
    runner = SemanticsRunner(grammar, domain, engine, depth)
    realizable = target in runner.vector(n, v)
    logger.info(
        "PBE problem decided",
        extra={
            "extra_data": {"nonterminal": n, "examples": len(examples), "realizable": realizable}
        },
    )
    if realizable:
        return Verdict(False, Witness(v, target), 1)
    return Verdict(True, None, 1)


# ---------------------------------------------------------------------------
# Grammar disjunction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SplitVerdict:
    """Outcome of a grammar-disjunction check.

    Attributes:
        holds: Both halves hold.
        halves: Verdict per half, keyed by nonterminal.
        failing: Halves whose triple is violated.
    """

    holds: bool
    halves: dict[str, Verdict] = field(default_factory=dict)

    @property
    def failing(self) -> list[str]:
        return [name for name, v in self.halves.items() if not v.holds]

    def as_dict(self, domain: StateDomain) -> dict[str, Any]:
        return {
            "holds": self.holds,
            "failing": self.failing,
            "halves": {name: v.as_dict(domain) for name, v in sorted(self.halves.items())},
        }


def grmdisj_check(
    triple: Triple,
    split: tuple[str, str | None],
    domain: StateDomain,
    pred_max_len: int = 1,
    max_pred_vectors: int = 200_000,
) -> SplitVerdict:
    """Check a triple through a split of its nonterminal into two halves.

    Every production of the triple's nonterminal must also be a production
    of one of the halves, so the halves' languages cover it.  The second
    half may be ``None`` for the degenerate split.

    Raises:
        InvalidSplitError: If a half is undeclared, has another sort, or
            the halves miss a production.
    """
    g = triple.grammar
    n = triple.nonterminal
    halves = [h for h in split if h is not None]
    for h in halves:
        if h not in g.nonterminals:
            raise InvalidSplitError(f"split half '{h}' is not declared")
        if g.sort_of(h) != g.sort_of(n):
            raise InvalidSplitError(
                f"split half '{h}' has sort {g.sort_of(h).value}, expected {g.sort_of(n).value}"
            )
    covered = {p.template for h in halves for p in g.productions_of(h)}
    missing = [p for p in g.productions_of(n) if p.template not in covered]
    if missing and n not in halves:
        raise InvalidSplitError(f"the halves do not cover '{missing[0]}'")
    runner = SemanticsRunner(g, domain, triple.engine, triple.depth)
    verdicts = {
        h: check_triple(triple.with_nonterminal(h), domain, pred_max_len, max_pred_vectors, runner)
        for h in halves
    }
    return SplitVerdict(all(v.holds for v in verdicts.values()), verdicts)
