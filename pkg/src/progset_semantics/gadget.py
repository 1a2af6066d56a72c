"""
The loop gadget that reduces vector membership to single-state reachability.

Given a set of statements ``S`` and two vectors ``v`` and ``u`` of length
``n``, the gadget is the set of loops

    j := 1;
    while 0 < j and j < n + 1 do {
        set the variables of S to v_j;
        <S>;
        if the variables of S equal u_j then j := j + 1 else j := 0
    }

One loop per program of ``S``.  A run ends with ``j = n + 1`` exactly
when that program maps every ``v_j`` to ``u_j``, so ``u`` is in the vector
denotation of ``S`` on ``v`` iff the gadget can reach a state with
``j = n + 1``.
"""

import logging
from dataclasses import dataclass
from typing import Any

from progset_semantics.concrete import EnumerationOracle
from progset_semantics.domain import State, StateDomain, VState
from progset_semantics.error_codes import PSEM_6004_GADGET_PRECONDITION
from progset_semantics.errors import SemanticsError
from progset_semantics.grammar import Rtg, ensure_valid, grammar_vars
from progset_semantics.logging_config import get_structured_logger
from progset_semantics.models.domain import DomainConfig
from progset_semantics.terms import (
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
    Seq,
    Sort,
    Term,
    VarRef,
    While,
    numeral,
)

logger: logging.LoggerAdapter[Any] = get_structured_logger(__name__)


class GadgetError(SemanticsError):
    """Raised when the gadget's preconditions fail."""

    def __init__(self, message: str) -> None:
        super().__init__(PSEM_6004_GADGET_PRECONDITION, message)


@dataclass(frozen=True)
class Gadget:
    """A generated gadget grammar.

    Attributes:
        grammar: The body grammar extended with the gadget nonterminal as start.
        nonterminal: The gadget nonterminal.
        counter: The counter variable.
        length: Length ``n`` of the vectors.
    """

    grammar: Rtg
    nonterminal: str
    counter: str
    length: int


def fresh_counter(g: Rtg, n: str, base: str = "j") -> str:
    """A variable name not used by the programs of ``n``."""
    used = grammar_vars(g, n)
    candidate, suffix = base, 0
    while candidate in used:
        suffix += 1
        candidate = f"{base}{suffix}"
    return candidate


def _sequence(stmts: list[Term]) -> Term:
    acc = stmts[-1]
    for s in reversed(stmts[:-1]):
        acc = Seq(s, acc)
    return acc


def _conjunction(tests: list[Term]) -> Term:
    if not tests:
        return TRUE
    acc = tests[0]
    for t in tests[1:]:
        acc = And(acc, t)
    return acc


def _dispatch(counter: str, branches: list[Term]) -> Term:
    """``if j == 1 then b1 else if j == 2 then b2 ... else bn``."""
    acc = branches[-1]
    for k in range(len(branches) - 1, 0, -1):
        acc = IfThenElse(Eq(VarRef(counter), numeral(k)), branches[k - 1], acc)
    return acc


def _check_preconditions(
    g: Rtg, n: str, v: VState, u: VState, counter: str, domain: StateDomain
) -> tuple[str, ...]:
    if g.sort_of(n) is not Sort.STMT:
        raise GadgetError(f"'{n}' has sort {g.sort_of(n).value}; the gadget needs statements")
    if not v or len(v) != len(u):
        raise GadgetError(f"v and u need equal nonzero lengths, got {len(v)} and {len(u)}")
    body_vars = grammar_vars(g, n)
    if counter in body_vars:
        raise GadgetError(f"counter '{counter}' is used by the programs of '{n}'")
    domain.require_tracked(body_vars | {counter})
    if domain.lo > 0 or domain.hi < len(v) + 1:
        raise GadgetError(
            f"the domain [{domain.lo}, {domain.hi}] cannot hold the counter values 0..{len(v) + 1}"
        )
    for k, (a, b) in enumerate(zip(v, u, strict=True), start=1):
        if not domain.agree_outside(a, b, body_vars):
            raise GadgetError(f"v_{k} and u_{k} differ outside the variables of '{n}'")
    return domain.ordered(body_vars)


def build_gadget(
    g: Rtg,
    n: str,
    v: VState,
    u: VState,
    domain: StateDomain,
    counter: str | None = None,
) -> Gadget:
    """Build the gadget loops for the statements of ``n``.

    Args:
        g: Grammar of the body set.
        n: Statement nonterminal of the body set.
        v: Input vector.
        u: Candidate output vector.
        domain: The state domain; must track the body variables and the counter.
        counter: Counter variable; a fresh name by default.

    Raises:
        GadgetError: If the preconditions fail.
    """
    j = counter or fresh_counter(g, n)
    names = _check_preconditions(g, n, v, u, j, domain)
    length = len(v)

    def setting(sigma: State) -> Term:
        projection = domain.restrict(sigma, names)
        stmts: list[Term] = [Assign(x, numeral(c)) for x, c in projection.items()]
        return _sequence(stmts or [Assign(j, VarRef(j))])

    def check(sigma: State) -> Term:
        projection = domain.restrict(sigma, names)
        test = _conjunction([Eq(VarRef(x), numeral(c)) for x, c in projection.items()])
        return IfThenElse(test, Assign(j, Add(VarRef(j), ONE)), Assign(j, ZERO))

    guard = And(Lt(ZERO, VarRef(j)), Lt(VarRef(j), numeral(length + 1)))
    body = _sequence(
        [
            _dispatch(j, [setting(s) for s in v]),
            Hole(n),
            _dispatch(j, [check(s) for s in u]),
        ]
    )
    template = Seq(Assign(j, numeral(1)), While(guard, body))
    name = g.fresh_name(f"W_{n}")
    extended = ensure_valid(g.extend(name, Sort.STMT, [template], start=True))
    logger.info(
        "Gadget built",
        extra={"extra_data": {"body": n, "gadget": name, "counter": j, "length": length}},
    )
    return Gadget(extended, name, j, length)


@dataclass(frozen=True)
class GadgetCheck:
    """Both sides of the gadget's iff-property.

    Attributes:
        member: ``u`` is in the vector denotation of the body set on ``v``.
        reaches: The gadget can end in a state whose counter is ``n + 1``.
    """

    member: bool
    reaches: bool

    @property
    def agrees(self) -> bool:
        return self.member == self.reaches

    def as_dict(self) -> dict[str, bool]:
        return {"member": self.member, "reaches": self.reaches, "agrees": self.agrees}


def gadget_domain(base: DomainConfig, g: Rtg, n: str, counter: str | None = None) -> DomainConfig:
    """``base`` extended with the body variables and the counter."""
    return base.with_variables(grammar_vars(g, n) | {counter or fresh_counter(g, n)})


def check_gadget(
    g: Rtg,
    n: str,
    v: VState,
    u: VState,
    domain: StateDomain,
    depth: int,
    counter: str | None = None,
) -> GadgetCheck:
    """Evaluate both sides of the iff-property with the enumeration oracle.

    The body set is enumerated at ``depth``; the gadget at ``depth + 1``,
    which derives exactly one loop per body program.  The gadget runs from
    ``v_1`` with the counter set to 0.
    """
    gadget = build_gadget(g, n, v, u, domain, counter)
    member = tuple(u) in EnumerationOracle(g, domain, depth).vector(n, [tuple(v)])
    start = domain.subst(v[0], gadget.counter, 0)
    outputs = EnumerationOracle(gadget.grammar, domain, depth + 1).agnostic(
        gadget.nonterminal, [start]
    )
    reaches = any(
        isinstance(s, State) and domain.value(s, gadget.counter) == gadget.length + 1
        for s in outputs
    )
    return GadgetCheck(member, reaches)
