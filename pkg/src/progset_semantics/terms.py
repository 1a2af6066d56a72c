"""
Abstract syntax of single G_imp programs.

Every constructor of the language is a frozen, slotted dataclass, so terms
are immutable, hashable values that can be collected into sets and shared
freely.  A ``Hole`` leaf names a grammar nonterminal; it only appears
inside production templates, never in an enumerated program.

The concrete syntax lives in :mod:`progset_semantics.parsing`; this module
owns sorts, variable sets, pretty-printing and the s-expression form.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator, Mapping
from dataclasses import dataclass
from enum import StrEnum
from typing import TypeAlias

from progset_semantics.error_codes import PSEM_1002_SORT_MISMATCH
from progset_semantics.errors import SemanticsError

RESERVED_SLOTS = frozenset({"e_t", "b_t"})
"""State components that can never be program variables."""

KEYWORDS = frozenset({"while", "do", "if", "then", "else", "not", "and", "t", "f"})

VARIABLE_PATTERN = r"[a-z][a-zA-Z0-9_]*"


class Sort(StrEnum):
    """Syntactic category of a term."""

    STMT = "Stmt"
    EXP = "Exp"
    BEXP = "BExp"


class SortError(SemanticsError):
    """Raised when a subterm has the wrong sort for its position.

    Attributes:
        subterm: Printed form of the offending subterm.
    """

    def __init__(self, subterm: str, expected: Sort, actual: Sort | None) -> None:
        self.subterm = subterm
        got = actual.value if actual is not None else "an undeclared nonterminal"
        super().__init__(
            PSEM_1002_SORT_MISMATCH,
            f"expected {expected.value}, got {got} in '{subterm}'",
        )


# ---------------------------------------------------------------------------
# Statements
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Assign:
    var: str
    exp: Term


@dataclass(frozen=True, slots=True)
class Seq:
    first: Term
    second: Term


@dataclass(frozen=True, slots=True)
class IfThenElse:
    cond: Term
    then_branch: Term
    else_branch: Term


@dataclass(frozen=True, slots=True)
class While:
    cond: Term
    body: Term


# ---------------------------------------------------------------------------
# Integer expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class VarRef:
    name: str


@dataclass(frozen=True, slots=True)
class Zero:
    pass


@dataclass(frozen=True, slots=True)
class One:
    pass


@dataclass(frozen=True, slots=True)
class Add:
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Sub:
    left: Term
    right: Term


# ---------------------------------------------------------------------------
# Boolean expressions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class TrueC:
    pass


@dataclass(frozen=True, slots=True)
class FalseC:
    pass


@dataclass(frozen=True, slots=True)
class Not:
    operand: Term


@dataclass(frozen=True, slots=True)
class And:
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Lt:
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Eq:
    left: Term
    right: Term


# ---------------------------------------------------------------------------
# Grammar templates
# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Hole:
    """A nonterminal occurrence inside a production template."""

    name: str


Term: TypeAlias = (
    Assign
    | Seq
    | IfThenElse
    | While
    | VarRef
    | Zero
    | One
    | Add
    | Sub
    | TrueC
    | FalseC
    | Not
    | And
    | Lt
    | Eq
    | Hole
)

ZERO = Zero()
ONE = One()
TRUE = TrueC()
FALSE = FalseC()

_RESULT_SORT: dict[type, Sort] = {
    Assign: Sort.STMT,
    Seq: Sort.STMT,
    IfThenElse: Sort.STMT,
    While: Sort.STMT,
    VarRef: Sort.EXP,
    Zero: Sort.EXP,
    One: Sort.EXP,
    Add: Sort.EXP,
    Sub: Sort.EXP,
    TrueC: Sort.BEXP,
    FalseC: Sort.BEXP,
    Not: Sort.BEXP,
    And: Sort.BEXP,
    Lt: Sort.BEXP,
    Eq: Sort.BEXP,
}

_CHILD_SORTS: dict[type, tuple[Sort, ...]] = {
    Assign: (Sort.EXP,),
    Seq: (Sort.STMT, Sort.STMT),
    IfThenElse: (Sort.BEXP, Sort.STMT, Sort.STMT),
    While: (Sort.BEXP, Sort.STMT),
    Add: (Sort.EXP, Sort.EXP),
    Sub: (Sort.EXP, Sort.EXP),
    Not: (Sort.BEXP,),
    And: (Sort.BEXP, Sort.BEXP),
    Lt: (Sort.EXP, Sort.EXP),
    Eq: (Sort.EXP, Sort.EXP),
}


# ---------------------------------------------------------------------------
# Structure
# ---------------------------------------------------------------------------


def children(term: Term) -> tuple[Term, ...]:
    """Return the term-valued children of ``term`` in left-to-right order."""
    match term:
        case Assign(_, exp):
            return (exp,)
        case Seq(first, second):
            return (first, second)
        case IfThenElse(cond, then_branch, else_branch):
            return (cond, then_branch, else_branch)
        case While(cond, body):
            return (cond, body)
        case Add(left, right) | Sub(left, right) | And(left, right):
            return (left, right)
        case Lt(left, right) | Eq(left, right):
            return (left, right)
        case Not(operand):
            return (operand,)
        case _:
            return ()


def rebuild(term: Term, new_children: tuple[Term, ...]) -> Term:
    """Return ``term`` with its children replaced, keeping the constructor."""
    match term:
        case Assign(var, _):
            return Assign(var, new_children[0])
        case Seq():
            return Seq(new_children[0], new_children[1])
        case IfThenElse():
            return IfThenElse(new_children[0], new_children[1], new_children[2])
        case While():
            return While(new_children[0], new_children[1])
        case Add():
            return Add(new_children[0], new_children[1])
        case Sub():
            return Sub(new_children[0], new_children[1])
        case And():
            return And(new_children[0], new_children[1])
        case Lt():
            return Lt(new_children[0], new_children[1])
        case Eq():
            return Eq(new_children[0], new_children[1])
        case Not():
            return Not(new_children[0])
        case _:
            return term


def subterms(term: Term) -> Iterator[Term]:
    """Yield ``term`` and all of its subterms in pre-order."""
    stack = [term]
    while stack:
        current = stack.pop()
        yield current
        stack.extend(reversed(children(current)))


def holes(term: Term) -> tuple[str, ...]:
    """Names of the holes of a template, left to right, with repetition."""
    return tuple(t.name for t in subterms(term) if isinstance(t, Hole))


def fill_holes(term: Term, fill: Callable[[Hole], Term]) -> Term:
    """Replace every hole of ``term`` by ``fill(hole)``."""
    if isinstance(term, Hole):
        return fill(term)
    kids = children(term)
    if not kids:
        return term
    return rebuild(term, tuple(fill_holes(kid, fill) for kid in kids))


def contains_while(term: Term) -> bool:
    return any(isinstance(t, While) for t in subterms(term))


def term_vars(term: Term) -> frozenset[str]:
    """The variables syntactically occurring in ``term``."""
    found: set[str] = set()
    for t in subterms(term):
        if isinstance(t, Assign):
            found.add(t.var)
        elif isinstance(t, VarRef):
            found.add(t.name)
    return frozenset(found)


def term_size(term: Term) -> int:
    return sum(1 for _ in subterms(term))


# ---------------------------------------------------------------------------
# Sorts
# ---------------------------------------------------------------------------


def sort_of(term: Term, hole_sorts: Mapping[str, Sort] | None = None) -> Sort:
    """Return the sort of ``term`` from its outermost constructor.

    Raises:
        SortError: If ``term`` is a hole whose sort is not in ``hole_sorts``.
    """
    if isinstance(term, Hole):
        sort = (hole_sorts or {}).get(term.name)
        if sort is None:
            raise SortError(pretty_print(term), Sort.STMT, None)
        return sort
    return _RESULT_SORT[type(term)]


def check_sorts(term: Term, hole_sorts: Mapping[str, Sort] | None = None) -> Sort:
    """Verify that every subterm of ``term`` is sort-correct.

    Args:
        term: The term or template to check.
        hole_sorts: Declared sorts of the nonterminals a template mentions.

    Returns:
        The sort of ``term``.

    Raises:
        SortError: Naming the first offending subterm.
    """
    if isinstance(term, Hole):
        return sort_of(term, hole_sorts)
    expected = _CHILD_SORTS.get(type(term), ())
    for child, want in zip(children(term), expected, strict=True):
        if isinstance(child, Hole) and (hole_sorts or {}).get(child.name) is None:
            raise SortError(pretty_print(child), want, None)
        got = check_sorts(child, hole_sorts)
        if got is not want:
            raise SortError(pretty_print(child), want, got)
    return _RESULT_SORT[type(term)]


# ---------------------------------------------------------------------------
# Numerals
# ---------------------------------------------------------------------------


def numeral(n: int) -> Term:
    """Encode ``n`` with the literals 0 and 1 only.

    Non-negative numbers become balanced ``1 + 1 + ...`` trees; negative
    numbers become ``0 - |n|``.
    """
    if n < 0:
        return Sub(ZERO, numeral(-n))
    if n == 0:
        return ZERO
    if n == 1:
        return ONE
    return Add(numeral((n + 1) // 2), numeral(n // 2))


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

_LEVEL_AND = 1
_LEVEL_NOT = 2
_LEVEL_CMP = 3
_LEVEL_ARITH = 4
_LEVEL_ATOM = 5

_STATEMENT_TYPES = (Assign, Seq, IfThenElse, While)


def _paren(text: str, level: int, minimum: int) -> str:
    return text if level >= minimum else f"({text})"


def _expr(term: Term) -> tuple[str, int]:
    match term:
        case Zero():
            return "0", _LEVEL_ATOM
        case One():
            return "1", _LEVEL_ATOM
        case TrueC():
            return "t", _LEVEL_ATOM
        case FalseC():
            return "f", _LEVEL_ATOM
        case VarRef(name):
            return name, _LEVEL_ATOM
        case Hole(name):
            return f"<{name}>", _LEVEL_ATOM
        case Add(left, right) | Sub(left, right):
            op = "+" if isinstance(term, Add) else "-"
            lhs = _paren(*_expr(left), _LEVEL_ARITH)
            rhs = _paren(*_expr(right), _LEVEL_ARITH + 1)
            return f"{lhs} {op} {rhs}", _LEVEL_ARITH
        case Lt(left, right) | Eq(left, right):
            op = "<" if isinstance(term, Lt) else "=="
            lhs = _paren(*_expr(left), _LEVEL_CMP + 1)
            rhs = _paren(*_expr(right), _LEVEL_CMP + 1)
            return f"{lhs} {op} {rhs}", _LEVEL_CMP
        case Not(operand):
            return f"not {_paren(*_expr(operand), _LEVEL_NOT)}", _LEVEL_NOT
        case And(left, right):
            lhs = _paren(*_expr(left), _LEVEL_AND)
            rhs = _paren(*_expr(right), _LEVEL_AND + 1)
            return f"{lhs} and {rhs}", _LEVEL_AND
        case _:
            return f"{{ {_stmt(term)} }}", _LEVEL_ATOM


def _stmt(term: Term) -> str:
    match term:
        case Assign(var, exp):
            return f"{var} := {_expr(exp)[0]}"
        case Seq(first, second):
            head = _stmt(first)
            if isinstance(first, Seq):
                head = f"{{ {head} }}"
            return f"{head}; {_stmt(second)}"
        case IfThenElse(cond, then_branch, else_branch):
            return (
                f"if {_expr(cond)[0]} then {{ {_stmt(then_branch)} }} "
                f"else {{ {_stmt(else_branch)} }}"
            )
        case While(cond, body):
            return f"while {_expr(cond)[0]} do {{ {_stmt(body)} }}"
        case Hole(name):
            return f"<{name}>"
        case _:
            return _expr(term)[0]


def pretty_print(term: Term) -> str:
    """Render ``term`` in the concrete syntax accepted by the parser."""
    if isinstance(term, _STATEMENT_TYPES):
        return _stmt(term)
    return _expr(term)[0]


_SEXPR_ATOMS: dict[type, str] = {Zero: "Zero", One: "One", TrueC: "True", FalseC: "False"}


def to_sexpr(term: Term) -> str:
    """Canonical s-expression form, e.g. ``(Assign x (Add (VarRef x) One))``."""
    atom = _SEXPR_ATOMS.get(type(term))
    if atom is not None:
        return atom
    match term:
        case VarRef(name):
            return f"(VarRef {name})"
        case Hole(name):
            return f"(Hole {name})"
        case Assign(var, exp):
            return f"(Assign {var} {to_sexpr(exp)})"
        case _:
            parts = " ".join(to_sexpr(child) for child in children(term))
            return f"({type(term).__name__} {parts})"
