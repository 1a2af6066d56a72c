"""
Typed regular tree grammars over G_imp.

A grammar names sets of programs: each nonterminal carries a sort and a
list of production templates, where a template is an ordinary term whose
holes ``<N>`` stand for nonterminals.  This module validates grammars,
enumerates their languages up to a derivation depth, computes the
variables a nonterminal can mention, and reads and writes grammar files.
"""

import itertools
import logging
from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from math import prod
from pathlib import Path
from typing import Any

from progset_semantics.error_codes import (
    PSEM_2001_GRAMMAR_INVALID,
    PSEM_2002_UNKNOWN_NONTERMINAL,
    PSEM_5001_ENUMERATION_CAP,
)
from progset_semantics.errors import ResourceLimitError, SemanticsError
from progset_semantics.logging_config import get_structured_logger
from progset_semantics.parsing import (
    Declaration,
    ProductionLine,
    StartLine,
    parse_grammar_items,
)
from progset_semantics.terms import (
    Sort,
    SortError,
    Term,
    While,
    check_sorts,
    fill_holes,
    holes,
    pretty_print,
    subterms,
    term_vars,
)

logger: logging.LoggerAdapter[Any] = get_structured_logger(__name__)


class GrammarValidationError(SemanticsError):
    """Raised when a grammar is not valid with respect to G_imp.

    Attributes:
        violations: Every violation found, each naming production and rule.
    """

    def __init__(self, violations: list["GrammarViolation"]) -> None:
        self.violations = violations
        listing = "; ".join(str(v) for v in violations)
        super().__init__(PSEM_2001_GRAMMAR_INVALID, f"invalid grammar: {listing}")


class UnknownNonterminalError(SemanticsError):
    """Raised when a query names a nonterminal the grammar does not declare."""

    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(PSEM_2002_UNKNOWN_NONTERMINAL, f"unknown nonterminal '{name}'")


@dataclass(frozen=True, slots=True)
class Production:
    """One alternative ``lhs ::= template``."""

    lhs: str
    template: Term

    @property
    def holes(self) -> tuple[str, ...]:
        return holes(self.template)

    def __str__(self) -> str:
        return f"{self.lhs} ::= {pretty_print(self.template)}"


@dataclass(frozen=True, slots=True)
class GrammarViolation:
    """A broken validity rule.

    Attributes:
        rule: Short rule name, e.g. ``"sort-mismatch"``.
        message: Human-readable description.
        production: The offending production, if any.
    """

    rule: str
    message: str
    production: str | None = None

    def __str__(self) -> str:
        where = f" in '{self.production}'" if self.production else ""
        return f"{self.rule}{where}: {self.message}"


@dataclass(frozen=True)
class Rtg:
    """A typed regular tree grammar.

    Attributes:
        nonterminals: Declared nonterminals and their sorts, in declaration order.
        start: The start nonterminal.
        productions: All productions, in file order.
    """

    nonterminals: Mapping[str, Sort]
    start: str
    productions: tuple[Production, ...] = ()
    _by_lhs: dict[str, tuple[Production, ...]] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        grouped: dict[str, list[Production]] = {}
        for p in self.productions:
            grouped.setdefault(p.lhs, []).append(p)
        object.__setattr__(self, "_by_lhs", {k: tuple(v) for k, v in grouped.items()})

    def sort_of(self, name: str) -> Sort:
        """Return the declared sort of ``name``.

        Raises:
            UnknownNonterminalError: If ``name`` is not declared.
        """
        try:
            return self.nonterminals[name]
        except KeyError:
            raise UnknownNonterminalError(name) from None

    def productions_of(self, name: str) -> tuple[Production, ...]:
        return self._by_lhs.get(name, ())

    def require(self, name: str | None) -> str:
        """Resolve ``name`` (or the start symbol when ``None``) to a declared nonterminal."""
        resolved = self.start if name is None else name
        self.sort_of(resolved)
        return resolved

    def extend(
        self, name: str, sort: Sort, templates: Iterable[Term], start: bool = False
    ) -> "Rtg":
        """Return a grammar with a new nonterminal and its productions added."""
        nonterminals = {**self.nonterminals, name: sort}
        productions = self.productions + tuple(Production(name, t) for t in templates)
        return Rtg(nonterminals, name if start else self.start, productions)

    def fresh_name(self, base: str) -> str:
        """A nonterminal name not yet declared, derived from ``base``."""
        candidate = base
        while candidate in self.nonterminals:
            candidate += "'"
        return candidate


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate(g: Rtg) -> list[GrammarViolation]:
    """Check ``g`` against G_imp.

    Returns:
        All violations; an empty list means the grammar is valid.
    """
    violations: list[GrammarViolation] = []
    if g.start not in g.nonterminals:
        violations.append(
            GrammarViolation("undeclared-start", f"start symbol '{g.start}' is not declared")
        )
    for p in g.productions:
        label = str(p)
        lhs_sort = g.nonterminals.get(p.lhs)
        if lhs_sort is None:
            violations.append(
                GrammarViolation("undeclared-nonterminal", f"'{p.lhs}' is not declared", label)
            )
        undeclared = sorted({h for h in p.holes if h not in g.nonterminals})
        for name in undeclared:
            violations.append(
                GrammarViolation("undeclared-nonterminal", f"'{name}' is not declared", label)
            )
        if undeclared or lhs_sort is None:
            continue
        try:
            got = check_sorts(p.template, g.nonterminals)
        except SortError as exc:
            violations.append(GrammarViolation("sort-mismatch", exc.message, label))
            continue
        if got is not lhs_sort:
            violations.append(
                GrammarViolation(
                    "sort-mismatch",
                    f"'{p.lhs}' has sort {lhs_sort.value} but the template has sort {got.value}",
                    label,
                )
            )
    return violations


def ensure_valid(g: Rtg) -> Rtg:
    """Return ``g`` unchanged, or raise :class:`GrammarValidationError`."""
    violations = validate(g)
    if violations:
        raise GrammarValidationError(violations)
    return g


# ---------------------------------------------------------------------------
# Languages
# ---------------------------------------------------------------------------


def productive_nonterminals(g: Rtg) -> frozenset[str]:
    """Nonterminals with a nonempty language (least fixpoint)."""
    productive: set[str] = set()
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            if p.lhs not in productive and all(h in productive for h in p.holes):
                productive.add(p.lhs)
                changed = True
    return frozenset(productive)


def useful_productions(g: Rtg, n: str) -> list[Production]:
    """Productions that occur in some derivation of a program of L(n)."""
    productive = productive_nonterminals(g)
    if n not in productive:
        return []
    seen = {n}
    queue = deque([n])
    found: list[Production] = []
    while queue:
        current = queue.popleft()
        for p in g.productions_of(current):
            if not all(h in productive for h in p.holes):
                continue
            found.append(p)
            for h in p.holes:
                if h not in seen:
                    seen.add(h)
                    queue.append(h)
    return found


def grammar_vars(g: Rtg, n: str) -> frozenset[str]:
    """The variables occurring in programs of L(n), read off the grammar."""
    g.sort_of(n)
    found: set[str] = set()
    for p in useful_productions(g, n):
        found |= term_vars(p.template)
    return frozenset(found)


def find_loop_production(g: Rtg, n: str) -> Production | None:
    """The first production reachable from ``n`` whose template contains While."""
    for p in useful_productions(g, n):
        if any(isinstance(t, While) for t in subterms(p.template)):
            return p
    return None


def enumerate_programs(g: Rtg, n: str, max_depth: int, max_programs: int = 100_000) -> list[Term]:
    """Enumerate L(n) up to a derivation depth.

    A production without holes derives a tree of height 2; a production
    with holes derives height 1 plus the highest subderivation.

    Args:
        g: A valid grammar.
        n: The nonterminal whose language is enumerated.
        max_depth: Largest derivation height kept.
        max_programs: Cap on the size of any intermediate language.

    Returns:
        The programs, sorted by printed text.

    Raises:
        UnknownNonterminalError: If ``n`` is not declared.
        ResourceLimitError: If a language exceeds ``max_programs``.
    """
    g.sort_of(n)
    if max_depth < 1:
        raise ValueError(f"max_depth must be at least 1, got {max_depth}")
    relevant = {p.lhs for p in useful_productions(g, n)}
    previous: dict[str, set[Term]] = {name: set() for name in relevant}
    for depth in range(2, max_depth + 1):
        current: dict[str, set[Term]] = {}
        for name in sorted(relevant):
            found: set[Term] = set()
            for p in g.productions_of(name):
                hole_names = p.holes
                if not hole_names:
                    found.add(p.template)
                    continue
                pools = [previous.get(h, set()) for h in hole_names]
                total = len(found) + prod(len(pool) for pool in pools)
                if total > max_programs:
                    _cap_hit(n, max_depth, max_programs)
                for choice in itertools.product(*pools):
                    found.add(instantiate(p.template, choice))
            if len(found) > max_programs:
                _cap_hit(n, max_depth, max_programs)
            current[name] = found
        previous = current
    programs = sorted(previous.get(n, set()), key=pretty_print)
    logger.debug(
        "Enumerated programs",
        extra={"extra_data": {"nonterminal": n, "depth": max_depth, "count": len(programs)}},
    )
    return programs


def instantiate(template: Term, choice: Iterable[Term]) -> Term:
    """Fill the holes of ``template`` left to right with ``choice``."""
    fills = iter(choice)
    return fill_holes(template, lambda _h: next(fills))


def _cap_hit(n: str, depth: int, cap: int) -> None:
    logger.warning(
        "Enumeration cap reached",
        extra={"extra_data": {"nonterminal": n, "depth": depth, "cap": cap}},
    )
    raise ResourceLimitError(
        PSEM_5001_ENUMERATION_CAP, "max_programs", cap, f"L({n}) at depth {depth}"
    )


# ---------------------------------------------------------------------------
# Grammar files
# ---------------------------------------------------------------------------


def parse_grammar(text: str, validate_grammar: bool = True) -> Rtg:
    """Build an :class:`Rtg` from grammar-file text.

    A missing ``start`` line selects the first declared nonterminal.

    Raises:
        TermSyntaxError: For malformed text.
        GrammarValidationError: For invalid grammars (when validating).
    """
    nonterminals: dict[str, Sort] = {}
    start: str | None = None
    productions: list[Production] = []
    conflicts: list[GrammarViolation] = []
    for item in parse_grammar_items(text):
        match item:
            case Declaration(name, sort):
                if name in nonterminals and nonterminals[name] is not sort:
                    conflicts.append(
                        GrammarViolation(
                            "duplicate-declaration",
                            f"'{name}' declared as {nonterminals[name].value} and {sort.value}",
                        )
                    )
                nonterminals.setdefault(name, sort)
            case StartLine(name):
                start = name
            case ProductionLine(lhs, alternatives):
                productions.extend(Production(lhs, alt) for alt in alternatives)
    if start is None:
        start = next(iter(nonterminals), "")
    g = Rtg(nonterminals, start, tuple(productions))
    if validate_grammar:
        violations = conflicts + validate(g)
        if violations:
            raise GrammarValidationError(violations)
    return g


def load_grammar(path: str | Path, validate_grammar: bool = True) -> Rtg:
    """Read and parse a grammar file."""
    text = Path(path).read_text(encoding="utf-8")
    g = parse_grammar(text, validate_grammar=validate_grammar)
    logger.info(
        "Grammar loaded",
        extra={
            "extra_data": {
                "path": str(path),
                "nonterminals": len(g.nonterminals),
                "productions": len(g.productions),
            }
        },
    )
    return g


def format_grammar(g: Rtg) -> str:
    """Render ``g`` in the grammar file format accepted by :func:`parse_grammar`."""
    lines = [f"nonterm {name} : {sort.value};" for name, sort in g.nonterminals.items()]
    if g.start:
        lines.append(f"start {g.start};")
    emitted: set[str] = set()
    for p in g.productions:
        if p.lhs in emitted:
            continue
        emitted.add(p.lhs)
        alternatives = " | ".join(pretty_print(q.template) for q in g.productions_of(p.lhs))
        lines.append(f"{p.lhs} ::= {alternatives};")
    return "\n".join(lines) + "\n"


def single_program_grammar(program: Term, sort: Sort, name: str = "C") -> Rtg:
    """The grammar whose language is exactly ``{program}``."""
    return Rtg({name: sort}, name, (Production(name, program),))
