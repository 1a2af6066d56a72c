"""
Named sample program sets and the replication suites.

Each suite re-derives one known result about sets of programs at desk
scale and records every comparison as a :class:`CheckResult`.  Randomized
suites draw from a seeded :class:`random.Random`, so a run is reproducible
from its seed and sample count.

Suites are registered in a :class:`SuiteRegistry`; :func:`get_default_registry`
returns one holding every built-in suite.
"""

import logging
import random
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from typing import Any

from progset_semantics.concrete import EnumerationOracle, Interpreter
from progset_semantics.domain import UP, DVState, State, StateDomain, VState
from progset_semantics.error_codes import PSEM_7001_UNKNOWN_SUITE
from progset_semantics.errors import SemanticsError
from progset_semantics.gadget import check_gadget, fresh_counter
from progset_semantics.grammar import Rtg, find_loop_production, grammar_vars, parse_grammar
from progset_semantics.granularity import FamilyMember, SemanticsId, refines_on_family
from progset_semantics.logging_config import get_structured_logger
from progset_semantics.loopfree import GUARD_LOOPS, LoopFreeEngine, noncompositionality_witness
from progset_semantics.models.domain import DomainConfig
from progset_semantics.models.reports import CheckResult, SuiteResult
from progset_semantics.models.triples import EngineKind, SemanticsMode
from progset_semantics.predicates import Pointwise, parse_formula
from progset_semantics.sampling import (
    random_dvstate_set,
    random_grammar,
    random_recursive_grammar,
    random_state,
)
from progset_semantics.triples import Triple, check_triple, pbe_unrealizable
from progset_semantics.vector_agnostic import VectorEngine
from progset_semantics.vector_aware import GreenVectorEngine, bad_lift, reduce, truncate

logger: logging.LoggerAdapter[Any] = get_structured_logger(__name__)

DEFAULT_GRAMMAR_SAMPLES = 200
DEFAULT_GADGET_SAMPLES = 100


class UnknownSuiteError(SemanticsError):
    """Raised when a suite name is not registered."""

    def __init__(self, name: str, known: Iterable[str]) -> None:
        self.name = name
        super().__init__(
            PSEM_7001_UNKNOWN_SUITE,
            f"unknown suite '{name}' (known: {', '.join(sorted(known))}, all)",
        )


# ---------------------------------------------------------------------------
# Sample program sets
# ---------------------------------------------------------------------------

_TEN = " + ".join(["1"] * 10)

SAMPLE_GRAMMARS: dict[str, str] = {
    "evenness": """
# Loops bounded by an even number; from x = 0 every run ends on an even x.
nonterm W : Stmt;
nonterm E : Exp;
start W;
W ::= while x < <E> do { x := x + 1 };
E ::= 0 | <E> + (1 + 1);
""",
    "equal-collecting": """
# Equal collecting semantics, different programs.
nonterm S1 : Stmt;
nonterm S2 : Stmt;
start S1;
S1 ::= x := 1 | x := 1 + 1;
S2 ::= if x == 0 then { x := 1 } else { x := 1 + 1 }
     | if not (x == 0) then { x := 1 } else { x := 1 + 1 };
""",
    "guard-loops": GUARD_LOOPS,
    "divergence-pair": """
nonterm S : Stmt;
start S;
S ::= while x == 1 do { x := x } | while x == 1 + 1 do { x := x };
""",
    "imprecise": """
nonterm W : Stmt;
start W;
W ::= while 1 + 1 + 1 < x do { x := x + 1 };
""",
    "shrinking-loop": """
nonterm W : Stmt;
start W;
W ::= while x < 1 + 1 do { x := x - 1 };
""",
    "occlusion": """
# f, and variants that diverge at x = 1, at x = 2, or at either.
nonterm SA : Stmt;
nonterm SB : Stmt;
nonterm F : Stmt;
nonterm F1 : Stmt;
nonterm F2 : Stmt;
nonterm F12 : Stmt;
start SA;
SA ::= <F> | <F12>;
SB ::= <F> | <F1> | <F2>;
F ::= x := x;
F1 ::= if x == 1 then { while t do { x := x } } else { x := x };
F2 ::= if x == 1 + 1 then { while t do { x := x } } else { x := x };
F12 ::= if x == 1 then { while t do { x := x } }
        else { if x == 1 + 1 then { while t do { x := x } } else { x := x } };
""",
    "plus-two-or-ten": f"""
nonterm S : Stmt;
start S;
S ::= x := x + (1 + 1) | x := x + ({_TEN});
""",
    "plus-n": """
nonterm S : Stmt;
nonterm N : Exp;
start S;
S ::= x := x + <N>;
N ::= 0 | <N> + 1;
""",
    "empty-or-spin": """
# An empty set of statements next to a loop that never terminates.
nonterm EMPTY : Stmt;
nonterm SPIN : Stmt;
start SPIN;
SPIN ::= while t do { x := x };
""",
}


def sample_grammar(name: str) -> Rtg:
    """Parse one of :data:`SAMPLE_GRAMMARS`.

    Raises:
        KeyError: If ``name`` is not a sample.
    """
    return parse_grammar(SAMPLE_GRAMMARS[name])


def _x_domain(lo: int, hi: int, extra: Iterable[str] = ()) -> StateDomain:
    return StateDomain(DomainConfig(lo=lo, hi=hi, tracked_vars=["x", *extra]))


def _xs(domain: StateDomain, *values: int) -> VState:
    return tuple(domain.make_state({"x": k}) for k in values)


def _x_values(domain: StateDomain, v: DVState) -> list[Any]:
    entries: list[Any] = [domain.value(s, "x") for s in v.entries]
    return entries + ["↑"] if v.diverges else entries


def _row_key(row: list[Any]) -> list[tuple[int, int]]:
    return [(1, 0) if e == "↑" else (0, e) for e in row]


def _rows(rows: Iterable[list[Any]]) -> list[list[Any]]:
    """Rows of x values (and the divergence marker) in canonical order."""
    return sorted(rows, key=_row_key)


def _x_table(domain: StateDomain, vectors: Iterable[DVState]) -> list[list[Any]]:
    return _rows(_x_values(domain, v) for v in vectors)


def _expect(name: str, observed: Any, expected: Any, **detail: Any) -> CheckResult:
    return CheckResult(
        name=name,
        passed=observed == expected,
        detail={"observed": observed, "expected": expected, **detail},
    )


def _tally(name: str, total: int, mismatches: list[Any], limit: int = 5) -> CheckResult:
    return CheckResult(
        name=name,
        passed=not mismatches,
        detail={"checked": total, "mismatches": len(mismatches), "first": mismatches[:limit]},
    )


def _finish(suite: str, checks: list[CheckResult]) -> SuiteResult:
    result = SuiteResult(suite=suite, passed=all(c.passed for c in checks), checks=checks)
    logger.info(
        "Replication suite finished",
        extra={
            "extra_data": {
                "suite": suite,
                "passed": result.passed,
                "checks": len(checks),
                "failures": result.failures,
            }
        },
    )
    return result


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def suite_noncompositionality(samples: int, seed: int) -> SuiteResult:
    """Equal guard sets whose loops differ."""
    report = noncompositionality_witness(DomainConfig(lo=0, hi=8))
    checks = [
        CheckResult(name="guards-agree-oracle", passed=report.guards_agree),
        CheckResult(name="guards-agree-compositional", passed=report.guards_agree_compositional),
        _expect("w1-outputs-from-x0", list(report.w1_outputs), [0, 1]),
        _expect("w2-outputs-from-x0", list(report.w2_outputs), [0, 2]),
    ]
    domain = _x_domain(0, 8)
    engine = VectorEngine(parse_grammar(GUARD_LOOPS), domain)
    start = DVState(_xs(domain, 0))
    checks.append(_expect("w1-vector", _x_table(domain, engine.query("W1", start)), [[0], [1]]))
    checks.append(_expect("w2-vector", _x_table(domain, engine.query("W2", start)), [[0], [2]]))
    return _finish("noncompositionality", checks)


def suite_evenness(samples: int, seed: int) -> SuiteResult:
    """Loops with even bounds started at x = 0 end on even values."""
    grammar = sample_grammar("evenness")
    domain = _x_domain(0, 8)
    pre = Pointwise(parse_formula("x == 0"), "x == 0")
    post = Pointwise(parse_formula("x % 2 == 0"), "x % 2 == 0")
    checks: list[CheckResult] = []
    for engine in (EngineKind.ORACLE, EngineKind.COMPOSITIONAL):
        triple = Triple(pre, grammar, "W", post, SemanticsMode.VECTOR_YELLOW, engine, depth=8)
        verdict = check_triple(triple, domain)
        checks.append(
            CheckResult(
                name=f"triple-holds-{engine.value}",
                passed=verdict.holds,
                detail=verdict.as_dict(domain),
            )
        )
    start = domain.make_state({"x": 0})
    oracle = EnumerationOracle(grammar, domain, depth=8)
    by_oracle = sorted({domain.value(s, "x") for s in oracle.agnostic("W", [start])})
    checks.append(_expect("outputs-oracle", by_oracle, [0, 2, 4, 6, 8]))
    answers = VectorEngine(grammar, domain).query("W", DVState((start,)))
    by_engine = sorted(domain.value(u.entries[0], "x") for u in answers)
    checks.append(_expect("outputs-compositional", by_engine, [0, 2, 4, 6, 8]))
    return _finish("evenness", checks)


def suite_vector_examples(samples: int, seed: int) -> SuiteResult:
    """Worked examples of the divergence-agnostic vector semantics."""
    checks: list[CheckResult] = []
    domain = _x_domain(0, 16)
    pair = VectorEngine(sample_grammar("plus-two-or-ten"), domain)
    checks.append(
        _expect(
            "plus-two-or-ten",
            _x_table(domain, pair.query("S", DVState(_xs(domain, 2, 4)))),
            [[4, 6], [12, 14]],
        )
    )
    shrinking = VectorEngine(sample_grammar("shrinking-loop"), domain)
    checks.append(
        _expect(
            "shrinking-loop-terminates",
            _x_table(domain, shrinking.query("W", DVState(_xs(domain, 2, 4)))),
            [[2, 4]],
        )
    )
    checks.append(
        _expect(
            "shrinking-loop-diverging-entry",
            _x_table(domain, shrinking.query("W", DVState(_xs(domain, 2, 4, 1)))),
            [],
        )
    )
    small = _x_domain(0, 8)
    plus_n = parse_grammar(SAMPLE_GRAMMARS["plus-n"])
    v = DVState(_xs(small, 1, 2, 3))
    expected = _rows([min(1 + n, 8), min(2 + n, 8), min(3 + n, 8)] for n in range(9))
    dedup = [row for i, row in enumerate(expected) if row not in expected[:i]]
    checks.append(
        _expect("plus-n", _x_table(small, VectorEngine(plus_n, small).query("S", v)), dedup)
    )
    oracle = EnumerationOracle(plus_n, small, depth=11)
    checks.append(
        _expect(
            "plus-n-oracle",
            _x_table(small, (DVState(u) for u in oracle.vector("S", [v.entries]))),
            dedup,
        )
    )
    return _finish("vector-examples", checks)


def _agnostic_rows(
    grammar: Rtg, n: str, domain: StateDomain, depth: int, states: list[State]
) -> list[Any]:
    """Per-state mismatches between the loop-free engine and the oracle."""
    oracle = EnumerationOracle(grammar, domain, depth)
    engine = LoopFreeEngine(grammar, domain)
    return [
        domain.describe(s)
        for s in states
        if engine.eval(n, [s]) != oracle.agnostic(n, [s])
    ]


def _vector_probe(domain: StateDomain, rng: random.Random, extra: int = 4) -> list[DVState]:
    base = domain.enumerate_projections(domain.variables)
    probe = [DVState(())] + [DVState((s,)) for s in base]
    probe += [DVState((a, b)) for a in base for b in base]
    for _ in range(extra):
        probe.append(DVState(tuple(random_state(rng, domain) for _ in range(rng.randint(1, 2)))))
    return probe


def suite_equivalence(samples: int, seed: int) -> SuiteResult:
    """Compositional engines against enumeration on random grammars.

    Samples alternate between acyclic grammars and recursive ones.  A
    recursive sample is compared at its saturation depth, where the oracle
    covers the whole infinite language.
    """
    rng = random.Random(seed)
    domain = _x_domain(0, 2, ["y"])
    states = domain.enumerate_states()
    agnostic_bad: list[Any] = []
    yellow_bad: list[Any] = []
    green_bad: list[Any] = []
    loop_free = recursive = 0
    for i in range(samples):
        if i % 2:
            sampled = random_recursive_grammar(rng, domain)
            recursive += 1
        else:
            sampled = random_grammar(rng)
        g, n, depth = sampled.grammar, sampled.nonterminal, sampled.depth
        if find_loop_production(g, n) is None:
            loop_free += 1
            rows = _agnostic_rows(g, n, domain, depth, states)
            agnostic_bad += [f"grammar {i}: {s}" for s in rows]
        oracle = EnumerationOracle(g, domain, depth)
        yellow = VectorEngine(g, domain)
        green = GreenVectorEngine(g, domain)
        for v in _vector_probe(domain, rng):
            if frozenset(DVState(u) for u in oracle.vector(n, [v.entries])) != yellow.query(n, v):
                yellow_bad.append(f"grammar {i} on {_x_values(domain, v)}")
            if oracle.vector_green(n, [v]) != green.query(n, v):
                green_bad.append(f"grammar {i} on {_x_values(domain, v)}")
    checks = [
        _tally("agnostic-loop-free", loop_free, agnostic_bad),
        _tally("vector-yellow", samples, yellow_bad),
        _tally("vector-green", samples, green_bad),
        CheckResult(name="recursive-samples", passed=True, detail={"count": recursive}),
    ]
    return _finish("equivalence", checks)


def _is_prefix(short: DVState, long: DVState) -> bool:
    if short == long:
        return True
    n = len(short.entries)
    return short.diverges and long.entries[:n] == short.entries


def suite_reduce(samples: int, seed: int) -> SuiteResult:
    """Truncation, reduction and the divergence-aware engine."""
    checks: list[CheckResult] = []
    domain = _x_domain(0, 8)
    pair = sample_grammar("divergence-pair")
    v = _xs(domain, 1, 2)
    raw = bad_lift(pair, "S", 3, v, domain)
    raw_rows = _rows(
        [e.value if e is UP else domain.value(e, "x") for e in row] for row in raw
    )
    checks.append(_expect("bad-lift", raw_rows, _rows([["↑", 2], [1, "↑"]])))
    cut = truncate(raw)
    checks.append(_expect("truncate", _x_table(domain, cut), _rows([["↑"], [1, "↑"]])))
    checks.append(_expect("reduce", _x_table(domain, reduce(cut)), [["↑"]]))
    green = GreenVectorEngine(pair, domain).query("S", DVState(v))
    checks.append(_expect("green-engine", _x_table(domain, green), [["↑"]]))

    x1, x2, x3 = _xs(domain, 1, 2, 3)
    v1 = {
        DVState((x1,), True),
        DVState((x1, x2), True),
        DVState((x2,), True),
        DVState((x1, x2)),
        DVState((x1, x2, x3), True),
    }
    checks.append(
        _expect(
            "reduce-occluders",
            _x_table(domain, reduce(v1)),
            _rows([[1, "↑"], [2, "↑"], [1, 2]]),
        )
    )
    imprecise = GreenVectorEngine(sample_grammar("imprecise"), domain)
    checks.append(
        _expect(
            "imprecise-loop",
            _x_table(domain, imprecise.query("W", DVState(_xs(domain, 1, 2, 3, 4)))),
            [[1, 2, 3, "↑"]],
        )
    )

    rng = random.Random(seed)
    bad: list[str] = []
    trials = samples * 50
    for t in range(trials):
        pool = random_dvstate_set(rng, _x_domain(0, 3))
        out = reduce(pool)
        if reduce(out) != out:
            bad.append(f"trial {t}: not idempotent")
        if not all(any(_is_prefix(o, u) for u in pool) for o in out):
            bad.append(f"trial {t}: output is not a prefix of an input")
        if any(a.occludes(b) for a in out for b in out if b.diverges):
            bad.append(f"trial {t}: diverging output occluded")
    checks.append(_tally("reduce-properties", trials, bad))
    return _finish("reduce", checks)


def _gadget_instance(
    rng: random.Random, domain: StateDomain, g: Rtg, n: str, depth: int, length: int
) -> tuple[VState, VState]:
    v = tuple(domain.make_state({"x": rng.randint(domain.lo, domain.hi)}) for _ in range(length))
    outputs = sorted(EnumerationOracle(g, domain, depth).vector(n, [v]))
    if outputs and rng.random() < 0.5:
        return v, rng.choice(outputs)
    names = grammar_vars(g, n)
    u = tuple(
        domain.subst(s, "x", rng.randint(domain.lo, domain.hi)) if "x" in names else s
        for s in v
    )
    return v, u


def _gadget_domain(counter: str, length: int) -> StateDomain:
    """The smallest domain over ``x`` and ``counter`` holding counter values 0..length + 1."""
    return _x_domain(0, length + 1, [counter])


def suite_gadget(samples: int, seed: int) -> SuiteResult:
    """Vector membership agrees with reachability through the loop gadget."""
    rng = random.Random(seed)
    bad: list[Any] = []
    members = 0
    for i in range(samples):
        sampled = random_grammar(rng, max_programs=10, names=("x",))
        g, n = sampled.grammar, sampled.nonterminal
        counter = fresh_counter(g, n)
        length = rng.randint(1, 2)
        domain = _gadget_domain(counter, length)
        v, u = _gadget_instance(rng, domain, g, n, sampled.depth, length)
        result = check_gadget(g, n, v, u, domain, sampled.depth, counter)
        members += result.member
        if not result.agrees:
            bad.append({"instance": i, **result.as_dict()})
    checks = [
        _tally("iff-property", samples, bad),
        CheckResult(name="member-cases", passed=True, detail={"count": members}),
    ]
    return _finish("gadget", checks)


def _member(label: str, g: Rtg, n: str) -> FamilyMember:
    return FamilyMember(label, g, n)


def suite_granularity(samples: int, seed: int) -> SuiteResult:
    """Witness pairs separating semantics, and vector-semantics invariants."""
    checks: list[CheckResult] = []
    domain = _x_domain(0, 2)
    equal = sample_grammar("equal-collecting")
    family = [_member("S1", equal, "S1"), _member("S2", equal, "S2")]
    oracle_sem = {
        mode: SemanticsId(mode, EngineKind.ORACLE, depth=4) for mode in SemanticsMode
    }

    def witness(fine: SemanticsMode, coarse: SemanticsMode, fam: list[FamilyMember]) -> Any:
        result = refines_on_family(fam, oracle_sem[fine], oracle_sem[coarse], domain)
        return list(result.witness) if result.witness else None

    checks.append(
        _expect(
            "agnostic-yellow-vs-aware",
            witness(SemanticsMode.AGNOSTIC_YELLOW, SemanticsMode.AWARE, family),
            ["S1", "S2"],
        )
    )
    checks.append(
        _expect(
            "agnostic-green-vs-aware",
            witness(SemanticsMode.AGNOSTIC_GREEN, SemanticsMode.AWARE, family),
            ["S1", "S2"],
        )
    )
    spin = sample_grammar("empty-or-spin")
    checks.append(
        _expect(
            "agnostic-yellow-vs-agnostic-green",
            witness(
                SemanticsMode.AGNOSTIC_YELLOW,
                SemanticsMode.AGNOSTIC_GREEN,
                [_member("empty", spin, "EMPTY"), _member("spin", spin, "SPIN")],
            ),
            ["empty", "spin"],
        )
    )
    occlusion = sample_grammar("occlusion")
    checks.append(
        _expect(
            "vector-green-vs-aware",
            witness(
                SemanticsMode.VECTOR_GREEN,
                SemanticsMode.AWARE,
                [_member("S_a", occlusion, "SA"), _member("S_b", occlusion, "SB")],
            ),
            ["S_a", "S_b"],
        )
    )
    checks.extend(_vector_invariants(samples * 5, seed))
    return _finish("granularity", checks)


def _vector_invariants(queries: int, seed: int) -> list[CheckResult]:
    """Projection, duplication and permutation checks of the vector engine."""
    rng = random.Random(seed)
    domain = _x_domain(0, 2, ["y"])
    pool = [random_grammar(rng) for _ in range(max(1, min(20, queries)))]
    projection: list[str] = []
    duplication: list[str] = []
    permutation: list[str] = []
    for q in range(queries):
        sampled = pool[q % len(pool)]
        g, n = sampled.grammar, sampled.nonterminal
        engine = VectorEngine(g, domain)
        oracle = EnumerationOracle(g, domain, sampled.depth)
        a, b = random_state(rng, domain), random_state(rng, domain)
        singles = engine.query(n, DVState((a,)))
        if {u.entries[0] for u in singles} != oracle.agnostic(n, [a]):
            projection.append(f"query {q}")
        doubled = engine.query(n, DVState((a, a)))
        if doubled != {DVState((u.entries[0], u.entries[0])) for u in singles}:
            duplication.append(f"query {q}")
        forward = engine.query(n, DVState((a, b)))
        backward = engine.query(n, DVState((b, a)))
        if backward != {DVState(u.entries[::-1]) for u in forward}:
            permutation.append(f"query {q}")
    return [
        _tally("projection", queries, projection),
        _tally("duplication", queries, duplication),
        _tally("permutation", queries, permutation),
    ]


def suite_pbe(samples: int, seed: int) -> SuiteResult:
    """Realizability of example pairs for the +2/+10 statements."""
    grammar = sample_grammar("plus-two-or-ten")
    domain = _x_domain(0, 16)
    a, b, c = _xs(domain, 2, 4, 6)
    (d,) = _xs(domain, 14)
    cases = {"consistent": [(a, b), (b, c)], "crossed": [(a, b), (b, d)]}
    expected = {"consistent": False, "crossed": True}
    interpreter = Interpreter(domain)
    programs = EnumerationOracle(grammar, domain, depth=6).programs("S")
    checks: list[CheckResult] = []
    for label, examples in cases.items():
        brute = not any(
            all(interpreter.eval_green(p, i) == o for i, o in examples) for p in programs
        )
        for engine in (EngineKind.COMPOSITIONAL, EngineKind.ORACLE):
            verdict = pbe_unrealizable(grammar, "S", examples, domain, engine, depth=6)
            checks.append(
                CheckResult(
                    name=f"{label}-{engine.value}",
                    passed=verdict.holds == expected[label] == brute,
                    detail={"unrealizable": verdict.holds, "brute_force": brute},
                )
            )
    return _finish("pbe", checks)


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

SuiteFn = Callable[[int, int], SuiteResult]


@dataclass(frozen=True)
class Suite:
    """A registered suite.

    Attributes:
        name: Name used on the command line.
        run: ``run(samples, seed)``.
        default_samples: Sample count when none is given.
        description: One line shown by ``--help``.
    """

    name: str
    run: SuiteFn
    default_samples: int
    description: str


class SuiteRegistry:
    """Registry of replication suites, run in registration order."""

    def __init__(self) -> None:
        self._suites: dict[str, Suite] = {}

    def register(self, suite: Suite) -> None:
        """Register a suite.

        Raises:
            ValueError: If the name is taken.
        """
        if suite.name == "all":
            raise ValueError("'all' is reserved for running every suite")
        if suite.name in self._suites:
            raise ValueError(f"Suite '{suite.name}' is already registered")
        self._suites[suite.name] = suite

    def get(self, name: str) -> Suite:
        """Look up a suite.

        Raises:
            UnknownSuiteError: If no suite has that name.
        """
        if name not in self._suites:
            raise UnknownSuiteError(name, self._suites)
        return self._suites[name]

    def names(self) -> list[str]:
        return list(self._suites)

    def run(self, name: str, samples: int | None = None, seed: int = 0) -> list[SuiteResult]:
        """Run one suite, or every suite for ``"all"``.

        ``samples`` overrides each suite's default sample count.
        """
        selected = list(self._suites.values()) if name == "all" else [self.get(name)]
        results = []
        for suite in selected:
            count = suite.default_samples if samples is None else samples
            logger.info(
                "Replication suite started",
                extra={"extra_data": {"suite": suite.name, "samples": count, "seed": seed}},
            )
            results.append(suite.run(count, seed))
        return results


def get_default_registry() -> SuiteRegistry:
    """A registry holding every built-in suite."""
    registry = SuiteRegistry()
    for suite in (
        Suite("noncompositionality", suite_noncompositionality, 0, "equal guards, unequal loops"),
        Suite("evenness", suite_evenness, 0, "even loop bounds give even outputs"),
        Suite("vector-examples", suite_vector_examples, 0, "worked vector-state examples"),
        Suite(
            "equivalence",
            suite_equivalence,
            DEFAULT_GRAMMAR_SAMPLES,
            "compositional engines against enumeration",
        ),
        Suite("reduce", suite_reduce, DEFAULT_GRAMMAR_SAMPLES, "truncate, reduce, green engine"),
        Suite("gadget", suite_gadget, DEFAULT_GADGET_SAMPLES, "gadget iff-property"),
        Suite(
            "granularity",
            suite_granularity,
            DEFAULT_GRAMMAR_SAMPLES,
            "witness pairs and vector invariants",
        ),
        Suite("pbe", suite_pbe, 0, "realizability of example pairs"),
    ):
        registry.register(suite)
    return registry
