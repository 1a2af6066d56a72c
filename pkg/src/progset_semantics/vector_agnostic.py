"""
Compositional vector-state semantics of sets of programs.

A vector-state runs one program on several inputs at once, which keeps
the correlation between the runs that the state-set semantics loses.  The
engine evaluates production templates rule by rule over vectors and
answers loops with :meth:`VectorEngine.f_while`, a search over traces of
the body that is realizable by a single (guard, body) program pair.

Queries are canonicalised before they reach the table: duplicate entries
are dropped (keeping first occurrences) and answers are expanded back.
Programs are deterministic, so equal entries always get equal outputs;
canonical queries are bounded by the number of states, which makes the
fixpoint finite even for recursion through loops.
"""

import logging
from collections import deque
from collections.abc import Iterable, Sequence
from typing import Any

from progset_semantics.domain import DVState, State, StateDomain, VState
from progset_semantics.error_codes import (
    PSEM_4002_VECTOR_SHAPE,
    PSEM_5004_TRACE_CAP,
    PSEM_5006_VECTOR_CAP,
)
from progset_semantics.errors import ResourceLimitError, SemanticsError
from progset_semantics.fixpoint import Reader, WorklistSolver
from progset_semantics.grammar import Rtg, grammar_vars
from progset_semantics.logging_config import get_structured_logger
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
    holes,
    term_vars,
)

logger: logging.LoggerAdapter[Any] = get_structured_logger(__name__)

VecKey = tuple[str, DVState]
VecSet = frozenset[DVState]
# (entry index, current state, states seen this activation, body inputs, body outputs, loop outputs)
_TraceNode = tuple[int, State | None, frozenset[State], VState, VState, VState]


class VectorShapeError(SemanticsError):
    """Raised when vector operands have incompatible lengths."""

    def __init__(self, message: str) -> None:
        super().__init__(PSEM_4002_VECTOR_SHAPE, message)


# ---------------------------------------------------------------------------
# Vector helpers
# ---------------------------------------------------------------------------


def filter_vector(v: Sequence[State], vb: Sequence[State]) -> VState:
    """Entries of ``v`` at the positions where ``vb`` has ``b_t`` true."""
    if len(v) != len(vb):
        raise VectorShapeError(f"cannot filter a vector of length {len(v)} by {len(vb)} guards")
    return tuple(s for s, g in zip(v, vb, strict=True) if g.b_t)


def negate(vb: Sequence[State]) -> VState:
    """Flip ``b_t`` in every entry."""
    return tuple(State(s.h, s.e_t, not s.b_t) for s in vb)


def interleave(u1: Sequence[State], u2: Sequence[State], vb: Sequence[State]) -> VState:
    """Merge ``u1`` (where ``vb`` is true) and ``u2`` (where it is false)."""
    return merge_by_mask(u1, u2, [g.b_t for g in vb])


def merge_by_mask(u1: Sequence[State], u2: Sequence[State], mask: Sequence[bool]) -> VState:
    trues = sum(mask)
    if len(u1) != trues or len(u2) != len(mask) - trues:
        raise VectorShapeError(
            f"cannot interleave {len(u1)} + {len(u2)} entries under a guard "
            f"with {trues} of {len(mask)} true"
        )
    first, second = iter(u1), iter(u2)
    return tuple(next(first) if b else next(second) for b in mask)


def canonicalize(v: DVState) -> tuple[DVState, tuple[int, ...]]:
    """Drop repeated entries; return the canonical vector and each entry's index in it."""
    first: dict[State, int] = {}
    index = tuple(first.setdefault(s, len(first)) for s in v.entries)
    return DVState(tuple(first), v.diverges), index


def expand(answer: DVState, index: tuple[int, ...], canonical_len: int) -> DVState:
    """Map an answer for a canonical query back to the original positions.

    A diverging answer of length k diverged on canonical entry k; in the
    original vector that entry first appears at ``index.index(k)``.
    """
    k = len(answer.entries)
    cut = len(index) if k >= canonical_len else index.index(k)
    return DVState(tuple(answer.entries[index[i]] for i in range(cut)), answer.diverges)


class VectorEngine:
    """Divergence-agnostic compositional vector-state semantics.

    Args:
        grammar: A valid grammar.
        domain: The state domain.
    """

    green = False

    def __init__(self, grammar: Rtg, domain: StateDomain) -> None:
        self.grammar = grammar
        self.domain = domain
        self.traces_explored = 0
        self._template_vars: dict[Term, tuple[str, ...]] = {}
        self.solver: WorklistSolver[VecKey, VecSet] = WorklistSolver(
            self._equation,
            frozenset(),
            self._join,
            domain.caps.max_table_entries,
            name="vector-green" if self.green else "vector",
        )

    # -- hooks -------------------------------------------------------------

    def _normalize(self, outs: set[DVState]) -> set[DVState]:
        return outs

    def _join(self, old: VecSet, new: VecSet) -> VecSet:
        return old | new

    def _lasso(self, outs: VState) -> DVState | None:
        """Output for a trace that revisits a loop-head state; none when divergence is dropped."""
        return None

    def _body_diverges(self, outs: VState) -> DVState | None:
        return None

    # -- table -------------------------------------------------------------

    def _equation(self, key: VecKey, read: Reader[VecKey, VecSet]) -> VecSet:
        n, v = key
        out: set[DVState] = set()
        for p in self.grammar.productions_of(n):
            out |= self._eval(p.template, v, read)
        return frozenset(self._normalize(out))

    def _query(self, n: str, v: DVState, read: Reader[VecKey, VecSet]) -> set[DVState]:
        canonical, index = canonicalize(v)
        answers = read((n, canonical))
        size = len(canonical.entries)
        return self._normalize({expand(a, index, size) for a in answers})

    # -- rules -------------------------------------------------------------

    def _with(
        self,
        v: DVState,
        e_ts: Iterable[int] | None = None,
        b_ts: Iterable[bool] | None = None,
    ) -> DVState:
        entries = v.entries
        if e_ts is not None:
            entries = tuple(State(s.h, e, s.b_t) for s, e in zip(entries, e_ts, strict=True))
        if b_ts is not None:
            entries = tuple(State(s.h, s.e_t, b) for s, b in zip(entries, b_ts, strict=True))
        return DVState(entries, v.diverges)

    def _binary_ints(
        self, left: Term, right: Term, v: DVState, read: Reader[VecKey, VecSet]
    ) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        lefts = {tuple(s.e_t for s in a.entries) for a in self._eval(left, v, read)}
        rights = {tuple(s.e_t for s in b.entries) for b in self._eval(right, v, read)}
        return [(a, b) for a in lefts for b in rights]

    def _eval(self, t: Term, v: DVState, read: Reader[VecKey, VecSet]) -> set[DVState]:
        clamp = self.domain.clamp
        match t:
            case Hole(name):
                return self._query(name, v, read)
            case Zero() | One():
                value = clamp(1 if isinstance(t, One) else 0)
                return {self._with(v, e_ts=[value] * len(v))}
            case VarRef(name):
                i = self.domain.index_of(name)
                return {self._with(v, e_ts=[s.h[i] for s in v.entries])}
            case Add(left, right) | Sub(left, right):
                sign = 1 if isinstance(t, Add) else -1
                return {
                    self._with(v, e_ts=[clamp(x + sign * y) for x, y in zip(a, b, strict=True)])
                    for a, b in self._binary_ints(left, right, v, read)
                }
            case Lt(left, right) | Eq(left, right):
                less = isinstance(t, Lt)
                return {
                    self._with(
                        v, b_ts=[x < y if less else x == y for x, y in zip(a, b, strict=True)]
                    )
                    for a, b in self._binary_ints(left, right, v, read)
                }
            case TrueC() | FalseC():
                return {self._with(v, b_ts=[isinstance(t, TrueC)] * len(v))}
            case Not(operand):
                return {
                    self._with(v, b_ts=[not s.b_t for s in a.entries])
                    for a in self._eval(operand, v, read)
                }
            case And(left, right):
                lefts = {tuple(s.b_t for s in a.entries) for a in self._eval(left, v, read)}
                rights = {tuple(s.b_t for s in b.entries) for b in self._eval(right, v, read)}
                return {
                    self._with(v, b_ts=[x and y for x, y in zip(a, b, strict=True)])
                    for a in lefts
                    for b in rights
                }
            case Assign(var, exp):
                i = self.domain.index_of(var)
                return {
                    DVState(
                        tuple(
                            State(s.h[:i] + (r.e_t,) + s.h[i + 1 :], s.e_t, s.b_t)
                            for s, r in zip(v.entries, a.entries, strict=True)
                        ),
                        v.diverges,
                    )
                    for a in self._eval(exp, v, read)
                }
            case Seq(first, second):
                out: set[DVState] = set()
                for mid in self._eval(first, v, read):
                    out |= self._eval(second, mid, read)
                return self._normalize(out)
            case IfThenElse(cond, then_branch, else_branch):
                return self._normalize(self._eval_if(cond, then_branch, else_branch, v, read))
            case While(cond, body):
                return self.f_while(cond, body, v, read)
        raise TypeError(f"cannot evaluate {t!r}")

    def _eval_if(
        self,
        cond: Term,
        then_branch: Term,
        else_branch: Term,
        v: DVState,
        read: Reader[VecKey, VecSet],
    ) -> set[DVState]:
        out: set[DVState] = set()
        for vb in self._eval(cond, v, read):
            mask = [s.b_t for s in vb.entries]
            v1 = DVState(filter_vector(v.entries, vb.entries))
            v2 = DVState(filter_vector(v.entries, negate(vb.entries)))
            thens = self._eval(then_branch, v1, read)
            if not thens:
                continue
            elses = self._eval(else_branch, v2, read)
            for u1 in thens:
                for u2 in elses:
                    out.add(self._merge(u1, u2, mask, v))
        return out

    def _merge(self, u1: DVState, u2: DVState, mask: list[bool], v: DVState) -> DVState:
        """Interleave branch results; a diverging branch cuts at its earliest original position."""
        if not u1.diverges and not u2.diverges:
            return DVState(merge_by_mask(u1.entries, u2.entries, mask), v.diverges)
        trues = [i for i, b in enumerate(mask) if b]
        falses = [i for i, b in enumerate(mask) if not b]
        cut = len(mask)
        if u1.diverges:
            cut = min(cut, trues[len(u1.entries)] if len(u1.entries) < len(trues) else len(mask))
        if u2.diverges:
            cut = min(cut, falses[len(u2.entries)] if len(u2.entries) < len(falses) else len(mask))
        first, second = iter(u1.entries), iter(u2.entries)
        entries = tuple(next(first) if mask[i] else next(second) for i in range(cut))
        return DVState(entries, True)

    # -- loops -------------------------------------------------------------

    def _guard_vars(self, guard: Term) -> tuple[str, ...]:
        if guard not in self._template_vars:
            names = set(term_vars(guard))
            for h in holes(guard):
                names |= grammar_vars(self.grammar, h)
            self._template_vars[guard] = self.domain.ordered(names)
        return self._template_vars[guard]

    def _trace_cap(self) -> int:
        cap = self.domain.caps.max_trace_len
        return cap if cap is not None else self.domain.state_count(self.domain.variables) + 1

    def f_while(
        self, guard: Term, body: Term, v: DVState, read: Reader[VecKey, VecSet]
    ) -> set[DVState]:
        """Vector denotation of ``while guard do body`` on ``v``.

        The guard set is read as a set of truth tables over the guard's
        variables.  For each table, traces are extended entry by entry;
        each extension must agree with one body answer on the whole
        concatenated prefix, so only traces some single body program
        realizes are visited.
        """
        gvars = self._guard_vars(guard)
        probes = self.domain.enumerate_projections(gvars)
        tables = self._eval(guard, DVState(tuple(probes)), read)
        out: set[DVState] = set()
        cap = self._trace_cap()
        body_nonempty: bool | None = None
        for table in tables:
            truth = {p: s.b_t for p, s in zip(probes, table.entries, strict=True)}

            def holds(sigma: State, _truth: dict[State, bool] = truth) -> bool:
                return _truth[self.domain.canonical(sigma, gvars)]

            m = len(v.entries)
            queue: deque[_TraceNode] = deque()
            if m == 0:
                queue.append((0, None, frozenset(), (), (), ()))
            else:
                queue.append((0, v.entries[0], frozenset({v.entries[0]}), (), (), ()))
            while queue:
                j, cur, seen, src, dst, outs = queue.popleft()
                self.traces_explored += 1
                if cur is None or not holds(cur):
                    if cur is not None:
                        outs = outs + (cur,)
                        j += 1
                    if j < m:
                        nxt = v.entries[j]
                        queue.append((j, nxt, frozenset({nxt}), src, dst, outs))
                        continue
                    if not src:
                        if body_nonempty is None:
                            body_nonempty = bool(self._eval(body, DVState(()), read))
                        if not body_nonempty:
                            continue
                    out.add(DVState(outs, v.diverges))
                    continue
                query = src + (cur,)
                successors: set[State] = set()
                for answer in self._eval(body, DVState(query), read):
                    if answer.diverges:
                        if answer.entries == dst:
                            emitted = self._body_diverges(outs)
                            if emitted is not None:
                                out.add(emitted)
                        continue
                    if answer.entries[:-1] == dst:
                        successors.add(answer.entries[-1])
                for nxt in sorted(successors):
                    if nxt in seen:
                        emitted = self._lasso(outs)
                        if emitted is not None:
                            out.add(emitted)
                        continue
                    if len(seen) + 1 > cap:
                        raise ResourceLimitError(
                            PSEM_5004_TRACE_CAP,
                            "max_trace_len",
                            cap,
                            f"loop trace from {self.domain.describe(v.entries[j])}",
                        )
                    queue.append((j, nxt, seen | {nxt}, query, dst + (nxt,), outs))
        return self._normalize(out)

    # -- public API --------------------------------------------------------

    def _check_length(self, v: DVState) -> None:
        cap = self.domain.caps.max_vector_len
        if len(v.entries) > cap:
            raise ResourceLimitError(
                PSEM_5006_VECTOR_CAP, "max_vector_len", cap, f"input of length {len(v.entries)}"
            )

    def query(self, n: str, v: DVState) -> frozenset[DVState]:
        """Denotation of ``n`` on the single vector ``v``."""
        self.grammar.sort_of(n)
        self.domain.require_tracked(grammar_vars(self.grammar, n))
        self._check_length(v)
        canonical, index = canonicalize(v)
        answers = self.solver.solve((n, canonical))
        size = len(canonical.entries)
        return frozenset(self._normalize({expand(a, index, size) for a in answers}))

    def eval_vectors(self, n: str, inputs: Iterable[DVState]) -> frozenset[DVState]:
        """Denotation of ``n`` on a set of vectors: the union of per-vector answers."""
        out: set[DVState] = set()
        for v in inputs:
            out |= self.query(n, v)
        return frozenset(self._normalize(out))

    def eval(self, n: str, inputs: Iterable[VState]) -> frozenset[VState]:
        """Plain-vector form of :meth:`eval_vectors` for divergence-free inputs."""
        answers = self.eval_vectors(n, (DVState(tuple(v)) for v in inputs))
        return frozenset(a.entries for a in answers)


def eval_vector(
    grammar: Rtg, n: str, inputs: Iterable[VState], domain: StateDomain
) -> frozenset[VState]:
    """One-shot wrapper around :meth:`VectorEngine.eval`."""
    return VectorEngine(grammar, domain).eval(n, inputs)
