"""
Concrete syntax for G_imp terms and grammar files, built on pyparsing.

Precedence, loosest first: ``;`` (right associative) between statements;
among expressions ``and`` < ``not`` < ``<``/``==`` < ``+``/``-`` (left
associative).  Loop bodies and branches are a single statement or a
braced block.  Grammar productions reuse the term syntax with holes
``<NAME>`` standing for nonterminals::

    nonterm W : Stmt;
    nonterm E : Exp;
    start W;
    W ::= while x < <E> do { x := x + 1 };
    E ::= 0 | <E> + (1 + 1);
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cache
from typing import Any

import pyparsing as pp

from progset_semantics.error_codes import (
    PSEM_1001_TERM_SYNTAX,
    PSEM_1003_RESERVED_NAME,
    PSEM_2003_GRAMMAR_SYNTAX,
)
from progset_semantics.errors import SemanticsError
from progset_semantics.terms import (
    FALSE,
    KEYWORDS,
    ONE,
    TRUE,
    VARIABLE_PATTERN,
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
    check_sorts,
    holes,
)

pp.ParserElement.enable_packrat()

NONTERMINAL_PATTERN = r"[A-Za-z][A-Za-z0-9_']*"

_RESERVED = re.compile(r"(?<![A-Za-z0-9_])(e_t|b_t)(?![A-Za-z0-9_])")


class TermSyntaxError(SemanticsError):
    """Raised when text is not in the concrete syntax.

    Attributes:
        line: 1-based line of the error.
        column: 1-based column of the error.
    """

    def __init__(
        self,
        message: str,
        line: int,
        column: int,
        error_code: str = PSEM_1001_TERM_SYNTAX,
    ) -> None:
        self.line = line
        self.column = column
        super().__init__(error_code, f"{message} (line {line}, column {column})")


@dataclass(frozen=True)
class Declaration:
    name: str
    sort: Sort


@dataclass(frozen=True)
class StartLine:
    name: str


@dataclass(frozen=True)
class ProductionLine:
    lhs: str
    alternatives: tuple[Term, ...]


GrammarItem = Declaration | StartLine | ProductionLine


# ---------------------------------------------------------------------------
# Parse actions
# ---------------------------------------------------------------------------


def _literal(s: str, loc: int, tokens: pp.ParseResults) -> Term:
    text = tokens[0]
    if text == "0":
        return ZERO
    if text == "1":
        return ONE
    raise pp.ParseFatalException(s, loc, f"only the literals 0 and 1 exist, got {text!r}")


def _fold_arith(tokens: pp.ParseResults) -> Term:
    items = list(tokens[0])
    acc: Term = items[0]
    for op, rhs in zip(items[1::2], items[2::2], strict=True):
        acc = Add(acc, rhs) if op == "+" else Sub(acc, rhs)
    return acc


def _fold_cmp(tokens: pp.ParseResults) -> Term:
    items = list(tokens[0])
    acc: Term = items[0]
    for op, rhs in zip(items[1::2], items[2::2], strict=True):
        acc = Lt(acc, rhs) if op == "<" else Eq(acc, rhs)
    return acc


def _fold_not(tokens: pp.ParseResults) -> Term:
    items = list(tokens[0])
    acc: Term = items[-1]
    for _ in items[:-1]:
        acc = Not(acc)
    return acc


def _fold_and(tokens: pp.ParseResults) -> Term:
    items = list(tokens[0])
    acc: Term = items[0]
    for rhs in items[2::2]:
        acc = And(acc, rhs)
    return acc


def _fold_seq(tokens: pp.ParseResults) -> Term:
    items: list[Term] = list(tokens)
    acc = items[-1]
    for stmt in reversed(items[:-1]):
        acc = Seq(stmt, acc)
    return acc


# ---------------------------------------------------------------------------
# Grammar construction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Syntax:
    term: pp.ParserElement
    grammar_file: pp.ParserElement


@cache
def _syntax() -> _Syntax:
    keyword = pp.MatchFirst([pp.Keyword(k) for k in sorted(KEYWORDS)])
    identifier = ~keyword + pp.Regex(VARIABLE_PATTERN)

    number = pp.Regex(r"[0-9]+").set_parse_action(_literal)
    true_lit = pp.Keyword("t").set_parse_action(lambda: TRUE)
    false_lit = pp.Keyword("f").set_parse_action(lambda: FALSE)
    hole = pp.Regex(r"<" + NONTERMINAL_PATTERN + r">").set_parse_action(
        lambda t: Hole(t[0][1:-1])
    )
    var_ref = (~keyword + pp.Regex(VARIABLE_PATTERN)).set_parse_action(lambda t: VarRef(t[-1]))

    operand = number | true_lit | false_lit | hole | var_ref
    not_op = pp.Keyword("not") | pp.Literal("!") | pp.Literal("¬")
    and_op = pp.Keyword("and") | pp.Literal("&&") | pp.Literal("∧")

    expr = pp.infix_notation(
        operand,
        [
            (pp.one_of("+ -"), 2, pp.OpAssoc.LEFT, _fold_arith),
            (pp.one_of("== <"), 2, pp.OpAssoc.LEFT, _fold_cmp),
            (not_op, 1, pp.OpAssoc.RIGHT, _fold_not),
            (and_op, 2, pp.OpAssoc.LEFT, _fold_and),
        ],
    )

    semi = pp.Suppress(";")
    stmt = pp.Forward()
    simple = pp.Forward()
    block = pp.Suppress("{") + stmt + pp.Suppress("}")
    assign = (identifier + pp.Suppress(":=") + expr).set_parse_action(
        lambda t: Assign(t[-2], t[-1])
    )
    if_stmt = (
        pp.Keyword("if").suppress()
        + expr
        + pp.Keyword("then").suppress()
        + simple
        + pp.Keyword("else").suppress()
        + simple
    ).set_parse_action(lambda t: IfThenElse(t[0], t[1], t[2]))
    while_stmt = (
        pp.Keyword("while").suppress() + expr + pp.Keyword("do").suppress() + simple
    ).set_parse_action(lambda t: While(t[0], t[1]))
    simple <<= while_stmt | if_stmt | block | assign | hole
    stmt <<= (simple + pp.ZeroOrMore(semi + simple)).set_parse_action(_fold_seq)

    term = (stmt + pp.StringEnd()) | (expr + pp.StringEnd())

    nt_name = pp.Regex(NONTERMINAL_PATTERN)
    sort_name = pp.one_of([s.value for s in Sort], as_keyword=True)
    declaration = (
        pp.Keyword("nonterm").suppress() + nt_name + pp.Suppress(":") + sort_name + semi
    ).set_parse_action(lambda t: Declaration(t[0], Sort(t[1])))
    start_line = (pp.Keyword("start").suppress() + nt_name + semi).set_parse_action(
        lambda t: StartLine(t[0])
    )
    alternative = (stmt + pp.FollowedBy(pp.one_of("| ;"))) | expr
    production = (
        nt_name + pp.Suppress("::=") + pp.DelimitedList(alternative, delim="|") + semi
    ).set_parse_action(lambda t: ProductionLine(t[0], tuple(t[1:])))
    grammar_file = pp.ZeroOrMore(declaration | start_line | production) + pp.StringEnd()
    grammar_file.ignore(pp.python_style_comment)

    return _Syntax(term=term, grammar_file=grammar_file)


# ---------------------------------------------------------------------------
# Public entry points
# ---------------------------------------------------------------------------


def _reject_reserved(text: str, error_code: str) -> None:
    match = _RESERVED.search(text)
    if match is None:
        return
    line = text.count("\n", 0, match.start()) + 1
    column = match.start() - (text.rfind("\n", 0, match.start()) + 1) + 1
    raise TermSyntaxError(
        f"'{match.group(1)}' is a reserved state component, not a program variable",
        line,
        column,
        error_code=PSEM_1003_RESERVED_NAME if error_code == PSEM_1001_TERM_SYNTAX else error_code,
    )


def _run(parser: pp.ParserElement, text: str, error_code: str) -> list[Any]:
    try:
        return list(parser.parse_string(text, parse_all=True))
    except pp.ParseBaseException as exc:
        raise TermSyntaxError(str(exc.msg), exc.lineno, exc.col, error_code=error_code) from exc


def parse_template(text: str) -> Term:
    """Parse a term that may contain holes, without checking sorts."""
    _reject_reserved(text, PSEM_1001_TERM_SYNTAX)
    return _run(_syntax().term, text, PSEM_1001_TERM_SYNTAX)[0]  # type: ignore[no-any-return]


def parse_term(text: str) -> Term:
    """Parse a single program in the concrete syntax.

    Args:
        text: Program text, e.g. ``"x1 := x1 + 1"``.

    Returns:
        The unique abstract syntax tree.

    Raises:
        TermSyntaxError: With line and column, for malformed text, reserved
            names, or holes (which only grammar productions may use).
        SortError: Naming the offending subterm when sorts do not fit.
    """
    term = parse_template(text)
    found = holes(term)
    if found:
        raise TermSyntaxError(f"hole <{found[0]}> outside a grammar production", 1, 1)
    check_sorts(term)
    return term


def parse_grammar_items(text: str) -> list[GrammarItem]:
    """Parse grammar-file text into declarations, start lines and productions.

    Raises:
        TermSyntaxError: With code ``PSEM_2003`` for malformed grammar text.
    """
    _reject_reserved(text, PSEM_2003_GRAMMAR_SYNTAX)
    return _run(_syntax().grammar_file, text, PSEM_2003_GRAMMAR_SYNTAX)
