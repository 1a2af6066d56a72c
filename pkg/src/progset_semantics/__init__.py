"""
program-set-semantics -- semantics of grammar-defined sets of programs.

Enumerates the programs of a regular tree grammar over a small imperative
language, computes their collecting, program-aware and vector-state
semantics with both an enumeration oracle and compositional engines, and
decides unrealizability triples over a finite state domain.
"""

__version__ = "0.1.0"
__author__ = "Cesar Garcia Lopez"

from progset_semantics.concrete import EnumerationOracle, Interpreter
from progset_semantics.config import SemanticsConfig, get_config, reset_config
from progset_semantics.domain import DVState, State, StateDomain
from progset_semantics.errors import ResourceLimitError, SemanticsError
from progset_semantics.grammar import Rtg, enumerate_programs, load_grammar, parse_grammar
from progset_semantics.logging_config import get_structured_logger, setup_logging
from progset_semantics.loopfree import LoopFreeEngine, eval_agnostic_compositional
from progset_semantics.parsing import parse_term
from progset_semantics.triples import Triple, check_triple, pbe_unrealizable
from progset_semantics.vector_agnostic import VectorEngine, eval_vector
from progset_semantics.vector_aware import GreenVectorEngine, eval_vector_green, reduce, truncate

__all__ = [
    # Configuration
    "SemanticsConfig",
    "get_config",
    "reset_config",
    # Logging
    "get_structured_logger",
    "setup_logging",
    # Errors
    "ResourceLimitError",
    "SemanticsError",
    # Programs and grammars
    "Rtg",
    "enumerate_programs",
    "load_grammar",
    "parse_grammar",
    "parse_term",
    # Domain
    "DVState",
    "State",
    "StateDomain",
    # Engines
    "EnumerationOracle",
    "GreenVectorEngine",
    "Interpreter",
    "LoopFreeEngine",
    "VectorEngine",
    "eval_agnostic_compositional",
    "eval_vector",
    "eval_vector_green",
    "reduce",
    "truncate",
    # Triples
    "Triple",
    "check_triple",
    "pbe_unrealizable",
]
