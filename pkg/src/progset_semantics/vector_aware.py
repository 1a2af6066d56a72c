"""
Divergence-aware vector-state semantics.

Running one program entrywise on a vector may leave the divergence marker
anywhere in the result.  Only the prefix before the first marker is
observable, so results are truncated there, and a diverging vector hides
every longer behaviour it is a prefix of.  :func:`reduce` keeps just the
shortest such occluder.

:class:`GreenVectorEngine` computes the same sets compositionally.  It
reuses the agnostic engine's rules, reduces at every union, and its loop
search reports divergence when the body diverges along a realizable trace
or when a realizable trace revisits a loop-head state (a lasso).
"""

import logging
from collections.abc import Iterable
from typing import TYPE_CHECKING, Any

from progset_semantics.domain import Divergence, DVState, State, StateDomain, VState
from progset_semantics.grammar import Rtg
from progset_semantics.logging_config import get_structured_logger
from progset_semantics.vector_agnostic import VecSet, VectorEngine

if TYPE_CHECKING:
    from progset_semantics.domain import RawDVector

logger: logging.LoggerAdapter[Any] = get_structured_logger(__name__)


def truncate(rows: Iterable["RawDVector"]) -> set[DVState]:
    """Cut every raw vector at its first divergence marker."""
    out: set[DVState] = set()
    for row in rows:
        entries: list[State] = []
        diverges = False
        for e in row:
            if isinstance(e, Divergence):
                diverges = True
                break
            entries.append(e)
        out.add(DVState(tuple(entries), diverges))
    return out


def reduce(vectors: Iterable[DVState]) -> frozenset[DVState]:
    """Replace each diverging vector by its shortest diverging prefix in the set.

    Vectors that do not diverge are kept as they are, even when a diverging
    vector is a prefix of them.
    """
    pool = frozenset(vectors)
    out: set[DVState] = set()
    for u in pool:
        if not u.diverges:
            out.add(u)
            continue
        for k in range(len(u.entries) + 1):
            candidate = DVState(u.entries[:k], True)
            if candidate in pool:
                out.add(candidate)
                break
    return frozenset(out)


def bad_lift(
    grammar: Rtg, n: str, depth: int, v: VState, domain: StateDomain
) -> frozenset["RawDVector"]:
    """Entrywise green results of every enumerated program of ``n`` on ``v``."""
    from progset_semantics.concrete import EnumerationOracle

    return EnumerationOracle(grammar, domain, depth).bad_rows(n, v)


class GreenVectorEngine(VectorEngine):
    """Divergence-aware compositional vector-state semantics."""

    green = True

    def _normalize(self, outs: set[DVState]) -> set[DVState]:
        return set(reduce(outs))

    def _join(self, old: VecSet, new: VecSet) -> VecSet:
        return reduce(old | new)

    def _lasso(self, outs: VState) -> DVState | None:
        return DVState(outs, True)

    def _body_diverges(self, outs: VState) -> DVState | None:
        return DVState(outs, True)


def eval_vector_green(
    grammar: Rtg, n: str, inputs: Iterable[DVState], domain: StateDomain
) -> frozenset[DVState]:
    """One-shot wrapper around :meth:`GreenVectorEngine.eval_vectors`."""
    engine = GreenVectorEngine(grammar, domain)
    result = engine.eval_vectors(n, inputs)
    logger.debug(
        "Green vector denotation computed",
        extra={
            "extra_data": {
                "nonterminal": n,
                "outputs": len(result),
                "traces_explored": engine.traces_explored,
            }
        },
    )
    return result
