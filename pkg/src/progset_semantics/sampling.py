"""
Seeded random grammars, vectors and vector sets for property checks.

Every generator takes an explicit :class:`random.Random`, so a suite run
with a fixed seed is reproducible.  :func:`random_grammar` draws acyclic
grammars (each nonterminal only refers to later ones), whose languages are
finite.  :func:`random_recursive_grammar` draws grammars with a cycle and
returns a depth at which enumeration already shows every behaviour on the
given domain.  Samples whose language is empty or too large are redrawn.
"""

import logging
import random
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

from progset_semantics.concrete import saturation_depth
from progset_semantics.domain import DVState, State, StateDomain, VState
from progset_semantics.errors import ResourceLimitError
from progset_semantics.grammar import Production, Rtg, enumerate_programs, ensure_valid
from progset_semantics.logging_config import get_structured_logger
from progset_semantics.terms import (
    FALSE,
    ONE,
    TRUE,
    ZERO,
    Add,
    And,
    Assign,
    Eq,
    Hole,
    IfThenElse,
    Lt,
    Not,
    Seq,
    Sort,
    Sub,
    Term,
    VarRef,
    While,
)

logger: logging.LoggerAdapter[Any] = get_structured_logger(__name__)

SAMPLE_VARS = ("x", "y")
_PREFIX = {Sort.STMT: "S", Sort.EXP: "E", Sort.BEXP: "B"}


@dataclass(frozen=True)
class SampledGrammar:
    """A random grammar whose whole language is enumerated at ``depth``.

    Attributes:
        grammar: The grammar.
        nonterminal: The queried (start) nonterminal.
        depth: A depth at which the enumeration is the full language.
        size: Number of programs in the language.
    """

    grammar: Rtg
    nonterminal: str
    depth: int
    size: int


def _var(rng: random.Random, names: tuple[str, ...]) -> Term:
    return VarRef(rng.choice(names))


def _leaf_exp(rng: random.Random, names: tuple[str, ...]) -> Term:
    x = _var(rng, names)
    return rng.choice([ZERO, ONE, x, Add(x, ONE), Sub(x, ONE), Add(ONE, ONE)])


def _leaf_bexp(rng: random.Random, names: tuple[str, ...]) -> Term:
    x = _var(rng, names)
    return rng.choice([TRUE, FALSE, Lt(x, ONE), Eq(x, ONE), Not(Eq(x, ZERO)), Lt(ONE, x)])


def _leaf_stmt(rng: random.Random, names: tuple[str, ...]) -> Term:
    name = rng.choice(names)
    x = VarRef(name)
    return rng.choice([Assign(name, Add(x, ONE)), Assign(name, Sub(x, ONE)), Assign(name, ZERO)])


class _TemplateMaker:
    """Draws production templates whose holes only name later nonterminals."""

    def __init__(
        self,
        rng: random.Random,
        names: tuple[str, ...],
        later: dict[Sort, list[str]],
        allow_loops: bool,
    ) -> None:
        self.rng = rng
        self.names = names
        self.later = later
        self.allow_loops = allow_loops

    def _child(self, sort: Sort, leaf: Callable[[random.Random, tuple[str, ...]], Term]) -> Term:
        options = self.later.get(sort, [])
        if options and self.rng.random() < 0.6:
            return Hole(self.rng.choice(options))
        return leaf(self.rng, self.names)

    def exp(self) -> Term:
        a, b = self._child(Sort.EXP, _leaf_exp), self._child(Sort.EXP, _leaf_exp)
        return self.rng.choice([a, Add(a, b), Sub(a, b)])

    def bexp(self) -> Term:
        e1, e2 = self._child(Sort.EXP, _leaf_exp), self._child(Sort.EXP, _leaf_exp)
        b = self._child(Sort.BEXP, _leaf_bexp)
        return self.rng.choice([b, Not(b), Lt(e1, e2), Eq(e1, e2), And(b, Lt(e1, e2))])

    def stmt(self) -> Term:
        s1 = self._child(Sort.STMT, _leaf_stmt)
        s2 = self._child(Sort.STMT, _leaf_stmt)
        kinds: list[Callable[[], Term]] = [
            lambda: Assign(self.rng.choice(self.names), self.exp()),
            lambda: Seq(s1, s2),
            lambda: IfThenElse(self.bexp(), s1, s2),
        ]
        if self.allow_loops:
            kinds.append(lambda: While(self.bexp(), s1))
        return self.rng.choice(kinds)()

    def template(self, sort: Sort) -> Term:
        match sort:
            case Sort.STMT:
                return self.stmt()
            case Sort.EXP:
                return self.exp()
        return self.bexp()


def random_grammar(
    rng: random.Random,
    max_nonterminals: int = 3,
    max_programs: int = 50,
    allow_loops: bool = True,
    names: tuple[str, ...] = SAMPLE_VARS,
    start_sort: Sort = Sort.STMT,
    attempts: int = 200,
) -> SampledGrammar:
    """Draw an acyclic grammar with a nonempty language of at most ``max_programs``.

    Raises:
        RuntimeError: If no acceptable grammar was drawn within ``attempts``.
    """
    for _ in range(attempts):
        count = rng.randint(1, max_nonterminals)
        sorts = [start_sort] + [rng.choice(list(Sort)) for _ in range(count - 1)]
        labels = [f"{_PREFIX[s]}{i}" for i, s in enumerate(sorts)]
        productions: list[Production] = []
        for i, (label, sort) in enumerate(zip(labels, sorts, strict=True)):
            later: dict[Sort, list[str]] = {}
            for other, other_sort in zip(labels[i + 1 :], sorts[i + 1 :], strict=True):
                later.setdefault(other_sort, []).append(other)
            maker = _TemplateMaker(rng, names, later, allow_loops)
            for _ in range(rng.randint(1, 3)):
                productions.append(Production(label, maker.template(sort)))
        nonterminals = dict(zip(labels, sorts, strict=True))
        grammar = ensure_valid(Rtg(nonterminals, labels[0], tuple(productions)))
        depth = count + 2
        try:
            programs = enumerate_programs(grammar, labels[0], depth, max_programs * 20)
        except ResourceLimitError:
            continue
        if 1 <= len(programs) <= max_programs:
            return SampledGrammar(grammar, labels[0], depth, len(programs))
    raise RuntimeError(f"no grammar with at most {max_programs} programs in {attempts} attempts")



def _has_cycle(g: Rtg) -> bool:
    edges: dict[str, set[str]] = {}
    for p in g.productions:
        edges.setdefault(p.lhs, set()).update(p.holes)

    def reaches(source: str, target: str) -> bool:
        seen: set[str] = set()
        stack = list(edges.get(source, ()))
        while stack:
            m = stack.pop()
            if m == target:
                return True
            if m not in seen:
                seen.add(m)
                stack.extend(edges.get(m, ()))
        return False

    return any(reaches(n, n) for n in edges)


def random_recursive_grammar(
    rng: random.Random,
    domain: StateDomain,
    max_nonterminals: int = 2,
    max_programs: int = 400,
    max_depth: int = 7,
    names: tuple[str, ...] = SAMPLE_VARS,
    attempts: int = 200,
) -> SampledGrammar:
    """Draw a grammar with a cycle through its nonterminals.

    Every nonterminal gets one production without holes, so all of them are
    productive; the other productions may name any nonterminal.  The returned
    depth is the saturation depth on ``domain``, so the oracle at that depth
    is exact.  Draws that need more than ``max_programs`` programs or do not
    saturate by ``max_depth`` are redrawn.

    Raises:
        RuntimeError: If no acceptable grammar was drawn within ``attempts``.
    """
    caps = domain.caps.model_copy(update={"max_programs": max_programs})
    bounded = StateDomain(domain.config.model_copy(update={"caps": caps}))
    for _ in range(attempts):
        count = rng.randint(1, max_nonterminals)
        sorts = [Sort.STMT] + [rng.choice(list(Sort)) for _ in range(count - 1)]
        labels = [f"{_PREFIX[s]}{i}" for i, s in enumerate(sorts)]
        by_sort: dict[Sort, list[str]] = {}
        for label, sort in zip(labels, sorts, strict=True):
            by_sort.setdefault(sort, []).append(label)
        productions: list[Production] = []
        for label, sort in zip(labels, sorts, strict=True):
            leaf = _TemplateMaker(rng, names, {}, allow_loops=True)
            productions.append(Production(label, leaf.template(sort)))
            maker = _TemplateMaker(rng, names, by_sort, allow_loops=True)
            for _ in range(rng.randint(1, 2)):
                productions.append(Production(label, maker.template(sort)))
        nonterminals = dict(zip(labels, sorts, strict=True))
        grammar = ensure_valid(Rtg(nonterminals, labels[0], tuple(productions)))
        if not _has_cycle(grammar):
            continue
        try:
            depth = saturation_depth(grammar, bounded, max_depth=max_depth)
        except ResourceLimitError:
            continue
        if depth is None:
            continue
        size = len(enumerate_programs(grammar, labels[0], depth, max_programs))
        logger.debug(
            "Recursive grammar drawn",
            extra={"extra_data": {"nonterminals": labels, "depth": depth, "size": size}},
        )
        return SampledGrammar(grammar, labels[0], depth, size)
    raise RuntimeError(
        f"no recursive grammar saturated by depth {max_depth} in {attempts} attempts"
    )


def random_state(rng: random.Random, domain: StateDomain, canonical: bool = False) -> State:
    """A uniformly drawn state; ``canonical`` fixes ``e_t`` and ``b_t`` to their defaults."""
    h = tuple(rng.randint(domain.lo, domain.hi) for _ in domain.variables)
    if canonical:
        return State(h, domain.lo, False)
    return State(h, rng.randint(domain.lo, domain.hi), rng.random() < 0.5)


def random_vector(
    rng: random.Random, domain: StateDomain, max_len: int, canonical: bool = False
) -> VState:
    return tuple(random_state(rng, domain, canonical) for _ in range(rng.randint(0, max_len)))


def random_dvstate_set(
    rng: random.Random, domain: StateDomain, max_size: int = 6, max_len: int = 3
) -> frozenset[DVState]:
    """A small set of vectors, some diverging, sharing prefixes often enough to occlude."""
    pool = [random_state(rng, domain, canonical=True) for _ in range(3)]
    out: set[DVState] = set()
    for _ in range(rng.randint(0, max_size)):
        entries = tuple(rng.choice(pool) for _ in range(rng.randint(0, max_len)))
        out.add(DVState(entries, rng.random() < 0.5))
    return frozenset(out)
