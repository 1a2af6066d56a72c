"""
Granularity comparisons between semantics on finite families.

A semantics A is finer than B when B's denotation of a set of programs is
a function of A's: whenever A cannot tell two sets apart, neither can B.
On a finite family with finite probes this can only be refuted.  A pair
of sets that A identifies and B separates is a witness that B is not
coarser than A; finding none is reported as "no counterexample on this
family", never as a proof.
"""

import hashlib
import json
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Any

from progset_semantics.concrete import BehaviorTable
from progset_semantics.domain import Divergence, DVState, State, StateDomain, sorted_vectors
from progset_semantics.grammar import Rtg
from progset_semantics.logging_config import get_structured_logger
from progset_semantics.models.triples import EngineKind, SemanticsMode
from progset_semantics.triples import SemanticsRunner

logger: logging.LoggerAdapter[Any] = get_structured_logger(__name__)


@dataclass(frozen=True)
class SemanticsId:
    """A semantics bound to the engine that computes it.

    The program-aware semantics is always computed by enumeration.
    """

    mode: SemanticsMode
    engine: EngineKind = EngineKind.COMPOSITIONAL
    depth: int | None = None

    def __str__(self) -> str:
        return self.mode.value


@dataclass(frozen=True)
class FamilyMember:
    """A labelled set of programs: ``nonterminal`` of ``grammar``."""

    label: str
    grammar: Rtg
    nonterminal: str


def _canonical(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _outcome_json(domain: StateDomain, o: State | Divergence) -> Any:
    return o.value if isinstance(o, Divergence) else domain.state_to_json(o)


def _table_json(domain: StateDomain, table: BehaviorTable) -> list[Any]:
    return [_outcome_json(domain, o) for o in table.outputs]


def default_probe(sem: SemanticsId, domain: StateDomain, max_len: int = 2) -> list[Any]:
    """Every state for state semantics; every vector up to ``max_len`` otherwise.

    Vector probes are built from the states that differ only in tracked
    variables.
    """
    if not sem.mode.is_vector:
        return list(domain.enumerate_states())
    base = domain.enumerate_projections(domain.variables)
    vectors: list[DVState] = [DVState(())]
    layer: list[tuple[State, ...]] = [()]
    for _ in range(max_len):
        layer = [v + (s,) for v in layer for s in base]
        vectors.extend(DVState(v) for v in layer)
    return vectors


def denotation_table(
    sem: SemanticsId, member: FamilyMember, probe: Iterable[Any], domain: StateDomain
) -> list[Any]:
    """The canonical, order-independent table of the denotation on ``probe``."""
    runner = SemanticsRunner(member.grammar, domain, sem.engine, sem.depth)
    n = member.nonterminal
    rows: list[Any] = []
    match sem.mode:
        case SemanticsMode.AWARE:
            states = sorted(set(probe))
            if not states:
                return []
            tables = runner.aware(n, states)
            return sorted((_table_json(domain, t) for t in tables), key=_canonical)
        case SemanticsMode.AGNOSTIC_YELLOW | SemanticsMode.AGNOSTIC_GREEN:
            green = sem.mode.is_green
            for sigma in sorted(set(probe)):
                outs = runner.agnostic(n, sigma, green)
                encoded = sorted((_outcome_json(domain, o) for o in outs), key=_canonical)
                rows.append([domain.state_to_json(sigma), encoded])
            return rows
    green = sem.mode.is_green
    for v in sorted_vectors(set(probe)):
        outs = sorted_vectors(runner.vector(n, v, green))
        rows.append([domain.vector_to_json(v), [domain.vector_to_json(u) for u in outs]])
    return rows


def denote(
    sem: SemanticsId, member: FamilyMember, probe: Iterable[Any], domain: StateDomain
) -> str:
    """Fingerprint of the denotation on ``probe``: equal iff the tables are equal."""
    encoded = _canonical(denotation_table(sem, member, probe, domain))
    return hashlib.sha256(encoded.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class RefinementResult:
    """Outcome of :func:`refines_on_family`.

    Attributes:
        fine: The semantics expected to be finer.
        coarse: The semantics expected to be coarser.
        witness: Labels of two members the fine semantics identifies and
            the coarse one separates, or ``None``.
    """

    fine: str
    coarse: str
    witness: tuple[str, str] | None = None

    @property
    def ok(self) -> bool:
        return self.witness is None

    def as_dict(self) -> dict[str, Any]:
        return {
            "fine": self.fine,
            "coarse": self.coarse,
            "ok": self.ok,
            "witness": list(self.witness) if self.witness else None,
            "verdict": "no counterexample on this family" if self.ok else "refuted",
        }


def refines_on_family(
    family: Sequence[FamilyMember],
    fine: SemanticsId,
    coarse: SemanticsId,
    domain: StateDomain,
    probes: dict[SemanticsMode, list[Any]] | None = None,
    probe_len: int = 2,
) -> RefinementResult:
    """Look for two members equal under ``fine`` but different under ``coarse``.

    Args:
        family: The sets of programs compared.
        fine: Semantics whose equalities are tested.
        coarse: Semantics that must respect those equalities.
        domain: A domain tracking every variable of the family.
        probes: Probe inputs per mode; :func:`default_probe` otherwise.
        probe_len: Vector probe length for the default probes.

    Returns:
        The first witness pair in family order, if any.
    """
    probes = probes or {}

    def probe_for(sem: SemanticsId) -> list[Any]:
        if sem.mode in probes:
            return probes[sem.mode]
        return default_probe(sem, domain, probe_len)

    fine_probe, coarse_probe = probe_for(fine), probe_for(coarse)
    fine_prints = [denote(fine, m, fine_probe, domain) for m in family]
    coarse_prints = [denote(coarse, m, coarse_probe, domain) for m in family]
    witness: tuple[str, str] | None = None
    for i in range(len(family)):
        for j in range(i + 1, len(family)):
            if fine_prints[i] == fine_prints[j] and coarse_prints[i] != coarse_prints[j]:
                witness = (family[i].label, family[j].label)
                break
        if witness:
            break
    result = RefinementResult(str(fine), str(coarse), witness)
    logger.info("Granularity compared", extra={"extra_data": result.as_dict()})
    return result
