"""
Triple-related Pydantic models for program-set-semantics.

Defines the semantics modes, the engine selector and the JSON shape of a
triple file ``{"pre": ..., "grammar": "path#N", "post": ..., "mode": ...,
"engine": ...}``.
"""

from enum import StrEnum
from typing import Any

from pydantic import BaseModel, Field, field_validator, model_validator


class SemanticsMode(StrEnum):
    """The semantics a query is answered in.

    ``aware`` is the program-aware semantics; it exists for granularity
    comparisons and is not a triple mode.
    """

    AGNOSTIC_YELLOW = "agnostic-yellow"
    AGNOSTIC_GREEN = "agnostic-green"
    AWARE = "aware"
    VECTOR_YELLOW = "vector-yellow"
    VECTOR_GREEN = "vector-green"

    @property
    def is_vector(self) -> bool:
        return self in (SemanticsMode.VECTOR_YELLOW, SemanticsMode.VECTOR_GREEN)

    @property
    def is_green(self) -> bool:
        return self in (SemanticsMode.AGNOSTIC_GREEN, SemanticsMode.VECTOR_GREEN)


TRIPLE_MODES = frozenset(m for m in SemanticsMode if m is not SemanticsMode.AWARE)


class EngineKind(StrEnum):
    """How a denotation is computed."""

    COMPOSITIONAL = "compositional"
    ORACLE = "oracle"


class TripleSpec(BaseModel):
    """A triple file.

    Attributes:
        pre: Precondition in predicate JSON form.
        grammar: ``"path#nonterminal"``; the nonterminal part is optional and
            defaults to the grammar's start symbol.
        post: Postcondition in predicate JSON form.
        mode: Semantics mode; never ``aware``.
        engine: Engine used to compute the denotation.
        depth: Derivation depth for the oracle engine.
    """

    pre: Any
    grammar: str
    post: Any
    mode: SemanticsMode = SemanticsMode.VECTOR_YELLOW
    engine: EngineKind = EngineKind.COMPOSITIONAL
    depth: int | None = Field(default=None, ge=1)

    @field_validator("grammar")
    @classmethod
    def grammar_must_name_a_file(cls, v: str) -> str:
        """The grammar reference must have a non-empty path part."""
        if not v.split("#", 1)[0].strip():
            raise ValueError("grammar must be 'path' or 'path#nonterminal'")
        return v

    @model_validator(mode="after")
    def mode_must_be_a_triple_mode(self) -> "TripleSpec":
        """Triples are checked in the agnostic or vector modes only."""
        if self.mode not in TRIPLE_MODES:
            raise ValueError(f"mode '{self.mode.value}' is not a triple mode")
        return self

    @property
    def grammar_path(self) -> str:
        return self.grammar.split("#", 1)[0]

    @property
    def nonterminal(self) -> str | None:
        parts = self.grammar.split("#", 1)
        return parts[1] if len(parts) == 2 and parts[1] else None
