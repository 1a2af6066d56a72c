"""
Tests for progset_semantics.terms -- term constructors, sorts, numerals and printing.
"""

import pytest

from progset_semantics.error_codes import PSEM_1002_SORT_MISMATCH
from progset_semantics.terms import (
    FALSE,
    ONE,
    TRUE,
    ZERO,
    Add,
    And,
    Assign,
    Hole,
    IfThenElse,
    Lt,
    Not,
    Seq,
    Sort,
    SortError,
    Sub,
    VarRef,
    While,
    check_sorts,
    children,
    contains_while,
    fill_holes,
    holes,
    numeral,
    pretty_print,
    rebuild,
    sort_of,
    term_size,
    term_vars,
    to_sexpr,
)


def _make_increment(var: str = "x") -> Assign:
    """Build ``var := var + 1``."""
    return Assign(var, Add(VarRef(var), ONE))


class TestStructure:
    """Verify child access, rebuilding and traversal helpers."""

    def test_children_of_assign(self) -> None:
        c = _make_increment()
        assert children(c) == (Add(VarRef("x"), ONE),)

    def test_children_of_leaf(self) -> None:
        assert children(ZERO) == ()
        assert children(VarRef("x")) == ()

    def test_rebuild_replaces_children(self) -> None:
        c = Seq(_make_increment("x"), _make_increment("y"))
        swapped = rebuild(c, (children(c)[1], children(c)[0]))
        assert swapped == Seq(_make_increment("y"), _make_increment("x"))

    def test_terms_are_hashable_and_structural(self) -> None:
        assert {_make_increment(), _make_increment()} == {_make_increment()}

    def test_term_vars_collects_assigned_and_read(self) -> None:
        c = Seq(Assign("y", VarRef("x")), _make_increment("z"))
        assert term_vars(c) == frozenset({"x", "y", "z"})

    def test_term_size_counts_nodes(self) -> None:
        assert term_size(_make_increment()) == 4

    def test_contains_while(self) -> None:
        loop = While(TRUE, _make_increment())
        assert contains_while(Seq(_make_increment(), loop))
        assert not contains_while(_make_increment())

    def test_holes_and_fill(self) -> None:
        template = Assign("x", Add(Hole("E"), Hole("F")))
        assert holes(template) == ("E", "F")
        filled = fill_holes(template, lambda h: ZERO if h.name == "E" else ONE)
        assert filled == Assign("x", Add(ZERO, ONE))
        assert holes(filled) == ()


class TestSorts:
    """Verify sort inference and sort checking."""

    def test_sort_of_constructors(self) -> None:
        assert sort_of(_make_increment()) is Sort.STMT
        assert sort_of(Add(ZERO, ONE)) is Sort.EXP
        assert sort_of(Not(FALSE)) is Sort.BEXP

    def test_hole_sort_comes_from_declarations(self) -> None:
        assert sort_of(Hole("E"), {"E": Sort.EXP}) is Sort.EXP

    def test_undeclared_hole_raises(self) -> None:
        with pytest.raises(SortError):
            sort_of(Hole("E"))

    def test_check_sorts_accepts_well_sorted(self) -> None:
        c = IfThenElse(Lt(VarRef("x"), ONE), _make_increment(), Assign("x", ZERO))
        assert check_sorts(c) is Sort.STMT

    def test_boolean_in_integer_position(self) -> None:
        with pytest.raises(SortError) as exc_info:
            check_sorts(Assign("x", TRUE))
        assert exc_info.value.error_code == PSEM_1002_SORT_MISMATCH
        assert exc_info.value.subterm == "t"

    def test_hole_of_wrong_sort(self) -> None:
        with pytest.raises(SortError):
            check_sorts(While(Hole("E"), _make_increment()), {"E": Sort.EXP})


class TestNumeral:
    """Verify encoding integers with the literals 0 and 1."""

    def test_small_numerals(self) -> None:
        assert numeral(0) == ZERO
        assert numeral(1) == ONE
        assert numeral(2) == Add(ONE, ONE)

    def test_three_prints_as_sum(self) -> None:
        assert pretty_print(numeral(3)) == "1 + 1 + 1"

    def test_negative_is_subtraction_from_zero(self) -> None:
        assert numeral(-2) == Sub(ZERO, Add(ONE, ONE))
        assert pretty_print(numeral(-2)) == "0 - (1 + 1)"


class TestPrinting:
    """Verify the pretty printer and the s-expression form."""

    def test_right_nested_sum_is_parenthesized(self) -> None:
        assert pretty_print(Add(ZERO, Add(ONE, ONE))) == "0 + (1 + 1)"

    def test_assignment(self) -> None:
        assert pretty_print(_make_increment()) == "x := x + 1"

    def test_while(self) -> None:
        loop = While(Lt(VarRef("x"), ONE), _make_increment())
        assert pretty_print(loop) == "while x < 1 do { x := x + 1 }"

    def test_if_then_else(self) -> None:
        c = IfThenElse(And(TRUE, Not(FALSE)), Assign("x", ZERO), Assign("x", ONE))
        assert pretty_print(c) == "if t and not f then { x := 0 } else { x := 1 }"

    def test_sequence_is_flat_when_right_nested(self) -> None:
        c = Seq(Assign("x", ZERO), Seq(Assign("y", ONE), Assign("x", ONE)))
        assert pretty_print(c) == "x := 0; y := 1; x := 1"

    def test_hole(self) -> None:
        assert pretty_print(Assign("x", Hole("E"))) == "x := <E>"

    def test_sexpr(self) -> None:
        assert to_sexpr(_make_increment()) == "(Assign x (Add (VarRef x) One))"
        assert to_sexpr(Not(TRUE)) == "(Not True)"
