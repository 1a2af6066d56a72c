"""
Pre- and postconditions over (vector-)states.

A predicate is either an explicit set of vector-states or a state formula
applied to every entry of a vector, optionally with length bounds.
Formulas use a small pyparsing language::

    x == 0
    x % 2 == 0 and not (y < 3)
    b_t == t || e_t >= -1

Pointwise predicates are expanded to explicit sets over the finite domain
when they serve as preconditions; postconditions are only ever tested for
membership.
"""

from __future__ import annotations

import itertools
import logging
import operator
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from functools import cache
from typing import Any, TypeAlias

import pyparsing as pp

from progset_semantics.domain import B_T, E_T, DVState, State, StateDomain
from progset_semantics.error_codes import PSEM_5007_PREDICATE_CAP, PSEM_6001_PREDICATE_SYNTAX
from progset_semantics.errors import ResourceLimitError, SemanticsError
from progset_semantics.logging_config import get_structured_logger
from progset_semantics.terms import VARIABLE_PATTERN

logger: logging.LoggerAdapter[Any] = get_structured_logger(__name__)

_FORMULA_KEYWORDS = ("and", "or", "not", "true", "false", "t", "f", E_T, B_T)

_COMPARISONS: dict[str, Callable[[int, int], bool]] = {
    "==": operator.eq,
    "!=": operator.ne,
    "<": operator.lt,
    "<=": operator.le,
    ">": operator.gt,
    ">=": operator.ge,
}


class PredicateSyntaxError(SemanticsError):
    """Raised for malformed formulas or predicate JSON."""

    def __init__(self, message: str) -> None:
        super().__init__(PSEM_6001_PREDICATE_SYNTAX, message)


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Num:
    value: int


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class LastInt:
    """The ``e_t`` slot."""


@dataclass(frozen=True, slots=True)
class Mod:
    operand: Operand
    k: int


Operand: TypeAlias = Num | Var | LastInt | Mod


@dataclass(frozen=True, slots=True)
class Compare:
    op: str
    left: Operand
    right: Operand


@dataclass(frozen=True, slots=True)
class LastBool:
    """``b_t`` compared with a truth value."""

    expected: bool


@dataclass(frozen=True, slots=True)
class Const:
    value: bool


@dataclass(frozen=True, slots=True)
class FNot:
    operand: Formula


@dataclass(frozen=True, slots=True)
class FAnd:
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class FOr:
    left: Formula
    right: Formula


Formula: TypeAlias = Compare | LastBool | Const | FNot | FAnd | FOr


def _fold_mod(tokens: pp.ParseResults) -> Operand:
    items = list(tokens[0])
    acc: Operand = items[0]
    for rhs in items[2::2]:
        if not isinstance(rhs, Num) or rhs.value <= 0:
            raise pp.ParseFatalException("", 0, "the modulus must be a positive integer literal")
        acc = Mod(acc, rhs.value)
    return acc


def _fold_binary(kind: type[FAnd] | type[FOr]) -> Callable[[pp.ParseResults], Formula]:
    def fold(tokens: pp.ParseResults) -> Formula:
        items = list(tokens[0])
        acc: Formula = items[0]
        for rhs in items[2::2]:
            acc = kind(acc, rhs)
        return acc

    return fold


def _fold_not(tokens: pp.ParseResults) -> Formula:
    items = list(tokens[0])
    acc: Formula = items[-1]
    for _ in items[:-1]:
        acc = FNot(acc)
    return acc


def _last_bool(tokens: pp.ParseResults) -> Formula:
    if len(tokens) == 1:
        return LastBool(True)
    op, value = tokens[1], tokens[2] in ("t", "true")
    return LastBool(value if op == "==" else not value)


@cache
def _formula_parser() -> pp.ParserElement:
    keyword = pp.MatchFirst([pp.Keyword(k) for k in _FORMULA_KEYWORDS])
    number = pp.Regex(r"-?[0-9]+").set_parse_action(lambda t: Num(int(t[0])))
    variable = (~keyword + pp.Regex(VARIABLE_PATTERN)).set_parse_action(lambda t: Var(t[-1]))
    last_int = pp.Keyword(E_T).set_parse_action(lambda: LastInt())
    operand = pp.infix_notation(
        number | last_int | variable,
        [(pp.Literal("%"), 2, pp.OpAssoc.LEFT, _fold_mod)],
    )
    cmp_op = pp.one_of("== != <= >= < >")
    comparison = (operand + cmp_op + operand).set_parse_action(
        lambda t: Compare(t[1], t[0], t[2])
    )
    truth = pp.one_of("t f true false", as_keyword=True)
    last_bool = (pp.Keyword(B_T) + pp.Optional(pp.one_of("== !=") + truth)).set_parse_action(
        _last_bool
    )
    const = pp.one_of("true false", as_keyword=True).set_parse_action(
        lambda t: Const(t[0] == "true")
    )
    atom = last_bool | comparison | const

    not_op = pp.Keyword("not") | pp.Literal("!") | pp.Literal("¬")
    and_op = pp.Keyword("and") | pp.Literal("&&") | pp.Literal("∧")
    or_op = pp.Keyword("or") | pp.Literal("||") | pp.Literal("∨")
    return pp.infix_notation(
        atom,
        [
            (not_op, 1, pp.OpAssoc.RIGHT, _fold_not),
            (and_op, 2, pp.OpAssoc.LEFT, _fold_binary(FAnd)),
            (or_op, 2, pp.OpAssoc.LEFT, _fold_binary(FOr)),
        ],
    )


def parse_formula(text: str) -> Formula:
    """Parse a state formula.

    Raises:
        PredicateSyntaxError: For text outside the formula language.
    """
    try:
        result = _formula_parser().parse_string(text, parse_all=True)
    except pp.ParseBaseException as exc:
        raise PredicateSyntaxError(
            f"malformed formula {text!r}: {exc.msg} (column {exc.col})"
        ) from exc
    return result[0]  # type: ignore[no-any-return]


def _operand_vars(o: Operand) -> set[str]:
    match o:
        case Var(name):
            return {name}
        case Mod(inner, _):
            return _operand_vars(inner)
    return set()


def formula_vars(formula: Formula) -> frozenset[str]:
    """Program variables a formula mentions."""
    match formula:
        case Compare(_, left, right):
            return frozenset(_operand_vars(left) | _operand_vars(right))
        case FNot(operand):
            return formula_vars(operand)
        case FAnd(left, right) | FOr(left, right):
            return formula_vars(left) | formula_vars(right)
    return frozenset()


def _value(o: Operand, domain: StateDomain, sigma: State) -> int:
    match o:
        case Num(value):
            return value
        case Var(name):
            return domain.value(sigma, name)
        case LastInt():
            return sigma.e_t
        case Mod(inner, k):
            return _value(inner, domain, sigma) % k
    raise TypeError(f"not an operand: {o!r}")


def holds(formula: Formula, domain: StateDomain, sigma: State) -> bool:
    """Evaluate ``formula`` on one state."""
    match formula:
        case Compare(op, left, right):
            return _COMPARISONS[op](_value(left, domain, sigma), _value(right, domain, sigma))
        case LastBool(expected):
            return sigma.b_t == expected
        case Const(value):
            return value
        case FNot(operand):
            return not holds(operand, domain, sigma)
        case FAnd(left, right):
            return holds(left, domain, sigma) and holds(right, domain, sigma)
        case FOr(left, right):
            return holds(left, domain, sigma) or holds(right, domain, sigma)
    raise TypeError(f"not a formula: {formula!r}")


# ---------------------------------------------------------------------------
# Predicates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Pointwise:
    """A formula every entry must satisfy.

    Attributes:
        formula: The parsed formula.
        text: The formula as written.
        min_len: Shortest admitted vector.
        max_len: Longest admitted vector; ``None`` admits any length and
            expands to the caller's default.
        diverges_ok: Whether vectors ending in divergence are admitted.
    """

    formula: Formula
    text: str
    min_len: int = 0
    max_len: int | None = None
    diverges_ok: bool = False


@dataclass(frozen=True)
class Explicit:
    """A listed set of vector-states, kept in their JSON encoding."""

    vectors: tuple[Any, ...]


Pred: TypeAlias = Pointwise | Explicit


def _int_field(obj: dict[str, Any], key: str, default: int | None) -> int | None:
    value = obj.get(key, default)
    if value is not None and (isinstance(value, bool) or not isinstance(value, int) or value < 0):
        raise PredicateSyntaxError(f"'{key}' must be a non-negative integer, got {value!r}")
    return value  # type: ignore[no-any-return]


def pred_from_json(obj: Any) -> Pred:
    """Decode a predicate from its JSON form.

    Accepted forms: a formula string; ``{"pointwise": formula, "min_len": a,
    "max_len": b, "diverges_ok": bool}``; ``{"explicit": [vector, ...]}``.
    """
    if isinstance(obj, str):
        return Pointwise(parse_formula(obj), obj)
    if isinstance(obj, dict) and "explicit" in obj:
        if set(obj) != {"explicit"} or not isinstance(obj["explicit"], list):
            raise PredicateSyntaxError("'explicit' must be the only key and hold a list")
        return Explicit(tuple(obj["explicit"]))
    if isinstance(obj, dict) and "pointwise" in obj:
        unknown = set(obj) - {"pointwise", "min_len", "max_len", "diverges_ok"}
        if unknown:
            raise PredicateSyntaxError(f"unknown predicate keys {sorted(unknown)}")
        text = obj["pointwise"]
        if not isinstance(text, str):
            raise PredicateSyntaxError("'pointwise' must be a formula string")
        diverges_ok = obj.get("diverges_ok", False)
        if not isinstance(diverges_ok, bool):
            raise PredicateSyntaxError("'diverges_ok' must be a Boolean")
        min_len = _int_field(obj, "min_len", 0) or 0
        max_len = _int_field(obj, "max_len", None)
        if max_len is not None and max_len < min_len:
            raise PredicateSyntaxError(f"max_len {max_len} is below min_len {min_len}")
        return Pointwise(parse_formula(text), text, min_len, max_len, diverges_ok)
    raise PredicateSyntaxError(f"malformed predicate {obj!r}")


def pred_to_json(pred: Pred) -> Any:
    if isinstance(pred, Explicit):
        return {"explicit": list(pred.vectors)}
    if pred.min_len == 0 and pred.max_len is None and not pred.diverges_ok:
        return pred.text
    return {
        "pointwise": pred.text,
        "min_len": pred.min_len,
        "max_len": pred.max_len,
        "diverges_ok": pred.diverges_ok,
    }


def _state_maps(vector: Any) -> Iterable[Any]:
    entries = vector.get("entries", []) if isinstance(vector, dict) else vector
    return entries if isinstance(entries, list) else []


def pred_vars(pred: Pred) -> frozenset[str]:
    """Program variables a predicate mentions."""
    if isinstance(pred, Pointwise):
        return formula_vars(pred.formula)
    names: set[str] = set()
    for vector in pred.vectors:
        for state in _state_maps(vector):
            if not isinstance(state, dict):
                continue
            h = state.get("h", {}) if ("h" in state or E_T in state or B_T in state) else state
            if isinstance(h, dict):
                names.update(k for k in h if isinstance(k, str))
    return frozenset(names)


def _decode_explicit(pred: Explicit, domain: StateDomain) -> frozenset[DVState]:
    return frozenset(domain.vector_from_json(v) for v in pred.vectors)


def pred_to_vectors(
    pred: Pred,
    domain: StateDomain,
    max_len: int = 1,
    max_vectors: int = 200_000,
) -> frozenset[DVState]:
    """The finite extension of ``pred`` over ``domain``.

    Args:
        pred: The predicate.
        domain: The state domain; must track every variable ``pred`` uses.
        max_len: Longest vector produced when the predicate sets no bound.
        max_vectors: Cap on the size of the extension.

    Raises:
        ResourceLimitError: If the extension would exceed ``max_vectors``.
    """
    if isinstance(pred, Explicit):
        return _decode_explicit(pred, domain)
    domain.require_tracked(formula_vars(pred.formula))
    upper = pred.max_len if pred.max_len is not None else max_len
    good = [s for s in domain.enumerate_states() if holds(pred.formula, domain, s)]
    flags = (False, True) if pred.diverges_ok else (False,)
    lengths = range(pred.min_len, upper + 1)
    total = sum(len(good) ** k for k in lengths) * len(flags)
    if total > max_vectors:
        logger.warning(
            "Predicate expansion cap reached",
            extra={"extra_data": {"predicate": pred.text, "requested": total, "cap": max_vectors}},
        )
        raise ResourceLimitError(
            PSEM_5007_PREDICATE_CAP, "max_pred_vectors", max_vectors, pred.text
        )
    return frozenset(
        DVState(tuple(entries), flag)
        for k in lengths
        for entries in itertools.product(good, repeat=k)
        for flag in flags
    )


def pred_to_states(pred: Pred, domain: StateDomain) -> frozenset[State]:
    """The states ``pred`` admits as a length-1 vector."""
    if isinstance(pred, Explicit):
        return frozenset(
            v.entries[0] for v in _decode_explicit(pred, domain) if len(v) == 1 and not v.diverges
        )
    domain.require_tracked(formula_vars(pred.formula))
    return frozenset(s for s in domain.enumerate_states() if holds(pred.formula, domain, s))


def vector_matcher(pred: Pred, domain: StateDomain) -> Callable[[DVState], bool]:
    """Membership test for output vectors."""
    if isinstance(pred, Explicit):
        members = _decode_explicit(pred, domain)
        return members.__contains__
    domain.require_tracked(formula_vars(pred.formula))

    def matches(v: DVState) -> bool:
        if v.diverges and not pred.diverges_ok:
            return False
        if len(v) < pred.min_len or (pred.max_len is not None and len(v) > pred.max_len):
            return False
        return all(holds(pred.formula, domain, s) for s in v.entries)

    return matches


def state_matcher(pred: Pred, domain: StateDomain) -> Callable[[State | None], bool]:
    """Membership test for single outputs; ``None`` stands for divergence.

    Divergence satisfies a pointwise predicate only when ``diverges_ok`` is
    set, and an explicit one only when it lists the bare diverging vector.
    """
    if isinstance(pred, Explicit):
        members = _decode_explicit(pred, domain)
        return lambda s: (DVState((), True) if s is None else DVState((s,))) in members
    domain.require_tracked(formula_vars(pred.formula))
    return lambda s: pred.diverges_ok if s is None else holds(pred.formula, domain, s)
