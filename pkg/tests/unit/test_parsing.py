"""
Tests for progset_semantics.parsing -- concrete syntax of programs and templates.
"""

import pytest

from progset_semantics.error_codes import (
    PSEM_1001_TERM_SYNTAX,
    PSEM_1003_RESERVED_NAME,
    PSEM_2003_GRAMMAR_SYNTAX,
)
from progset_semantics.parsing import (
    Declaration,
    ProductionLine,
    StartLine,
    TermSyntaxError,
    parse_grammar_items,
    parse_template,
    parse_term,
)
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
    Not,
    Seq,
    Sort,
    SortError,
    Sub,
    VarRef,
    While,
    pretty_print,
)


class TestParseTerm:
    """Verify parsing of single programs."""

    def test_assignment(self) -> None:
        assert parse_term("x := x + 1") == Assign("x", Add(VarRef("x"), ONE))

    def test_sequence_is_right_nested(self) -> None:
        assert parse_term("x := 0; y := 1; x := 1") == Seq(
            Assign("x", ZERO), Seq(Assign("y", ONE), Assign("x", ONE))
        )

    def test_subtraction_is_left_associative(self) -> None:
        assert parse_term("x - 1 - 1") == Sub(Sub(VarRef("x"), ONE), ONE)

    def test_boolean_precedence(self) -> None:
        assert parse_term("not x < 1 and t") == And(Not(Lt(VarRef("x"), ONE)), TRUE)

    def test_while_loop(self) -> None:
        assert parse_term("while x < 1 do { x := x + 1 }") == While(
            Lt(VarRef("x"), ONE), Assign("x", Add(VarRef("x"), ONE))
        )

    def test_if_then_else(self) -> None:
        assert parse_term("if x == 0 then { x := 1 } else { x := 1 + 1 }") == IfThenElse(
            Eq(VarRef("x"), ZERO), Assign("x", ONE), Assign("x", Add(ONE, ONE))
        )

    def test_expression_program(self) -> None:
        assert parse_term("x + 1") == Add(VarRef("x"), ONE)

    @pytest.mark.parametrize(
        "text",
        [
            "x := 0 + (1 + 1)",
            "while x < 1 + 1 do { x := x - 1 }",
            "if not x == 0 then { x := 1 } else { y := x }",
            "x := 0; while t do { x := x }",
        ],
    )
    def test_printed_form_parses_back(self, text: str) -> None:
        assert pretty_print(parse_term(text)) == text


class TestParseErrors:
    """Verify error reporting for text outside the language."""

    def test_literals_other_than_zero_and_one(self) -> None:
        with pytest.raises(TermSyntaxError) as exc_info:
            parse_term("x := 2")
        assert exc_info.value.error_code == PSEM_1001_TERM_SYNTAX

    def test_reserved_component(self) -> None:
        with pytest.raises(TermSyntaxError) as exc_info:
            parse_term("x := e_t")
        assert exc_info.value.error_code == PSEM_1003_RESERVED_NAME
        assert exc_info.value.column == 6

    def test_hole_outside_grammar(self) -> None:
        with pytest.raises(TermSyntaxError):
            parse_term("x := <E>")

    def test_sort_mismatch(self) -> None:
        with pytest.raises(SortError):
            parse_term("x := t")

    def test_truncated_input_reports_position(self) -> None:
        with pytest.raises(TermSyntaxError) as exc_info:
            parse_term("x := 1 +")
        assert exc_info.value.line == 1
        assert exc_info.value.column >= 1


class TestTemplates:
    """Verify templates with holes and grammar-file items."""

    def test_template_with_hole(self) -> None:
        assert parse_template("x := x + <N>") == Assign("x", Add(VarRef("x"), Hole("N")))

    def test_grammar_items(self) -> None:
        items = parse_grammar_items(
            "# comment\n"
            "nonterm S : Stmt;\n"
            "nonterm E : Exp;\n"
            "start S;\n"
            "S ::= x := <E>; <S> | x := 0;\n"
            "E ::= 0\n"
            "    | <E> + 1;\n"
        )
        assert items[0] == Declaration("S", Sort.STMT)
        assert items[1] == Declaration("E", Sort.EXP)
        assert items[2] == StartLine("S")
        assert items[3] == ProductionLine(
            "S", (Seq(Assign("x", Hole("E")), Hole("S")), Assign("x", ZERO))
        )
        assert items[4] == ProductionLine("E", (ZERO, Add(Hole("E"), ONE)))

    def test_malformed_grammar_uses_grammar_code(self) -> None:
        with pytest.raises(TermSyntaxError) as exc_info:
            parse_grammar_items("nonterm S : Stmt\nS ::= x := 0;")
        assert exc_info.value.error_code == PSEM_2003_GRAMMAR_SYNTAX
