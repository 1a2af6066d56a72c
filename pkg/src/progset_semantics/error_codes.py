"""
Error code constants for program-set-semantics.

All error codes follow the ``PSEM_XXXX`` format grouped by domain.
Each constant is a string suitable for use in structured error reports
and machine-readable logging.
"""

# ---------------------------------------------------------------------------
# Syntax and sort errors (PSEM_1xxx)
# ---------------------------------------------------------------------------

PSEM_1001_TERM_SYNTAX = "PSEM_1001"
"""Program text is not in the concrete syntax."""

PSEM_1002_SORT_MISMATCH = "PSEM_1002"
"""A subterm has the wrong sort for its position (e.g. a Boolean where an integer is required)."""

PSEM_1003_RESERVED_NAME = "PSEM_1003"
"""A reserved state component (``e_t``/``b_t``) or keyword was used as a program variable."""

# ---------------------------------------------------------------------------
# Grammar errors (PSEM_2xxx)
# ---------------------------------------------------------------------------

PSEM_2001_GRAMMAR_INVALID = "PSEM_2001"
"""The grammar failed validation; the violation list is attached."""

PSEM_2002_UNKNOWN_NONTERMINAL = "PSEM_2002"
"""A requested nonterminal is not declared by the grammar."""

PSEM_2003_GRAMMAR_SYNTAX = "PSEM_2003"
"""A grammar file is not in the grammar file format."""

# ---------------------------------------------------------------------------
# Domain errors (PSEM_3xxx)
# ---------------------------------------------------------------------------

PSEM_3001_VALUE_OUT_OF_RANGE = "PSEM_3001"
"""An integer written into a state lies outside ``[lo, hi]``."""

PSEM_3002_UNTRACKED_VARIABLE = "PSEM_3002"
"""A program or predicate uses a variable the domain does not track."""

PSEM_3003_STATE_ENCODING_INVALID = "PSEM_3003"
"""A JSON state or vector-state encoding is malformed."""

PSEM_3004_DOMAIN_INVALID = "PSEM_3004"
"""The domain configuration is unusable (e.g. no tracked variables)."""

# ---------------------------------------------------------------------------
# Engine errors (PSEM_4xxx)
# ---------------------------------------------------------------------------

PSEM_4001_LOOP_DETECTED = "PSEM_4001"
"""The loop-free compositional engine was asked about a grammar that reaches While."""

PSEM_4002_VECTOR_SHAPE = "PSEM_4002"
"""Vector operands have incompatible lengths (interleave/filter misuse)."""

# ---------------------------------------------------------------------------
# Resource caps (PSEM_5xxx)
# ---------------------------------------------------------------------------

PSEM_5001_ENUMERATION_CAP = "PSEM_5001"
"""Bounded enumeration produced more programs than ``max_programs``."""

PSEM_5002_STEP_BUDGET = "PSEM_5002"
"""A single-program evaluation exceeded its loop-iteration budget."""

PSEM_5003_TABLE_CAP = "PSEM_5003"
"""A denotation table grew beyond ``max_table_entries``."""

PSEM_5004_TRACE_CAP = "PSEM_5004"
"""A loop trace segment grew beyond ``max_trace_len``."""

PSEM_5005_STATE_CAP = "PSEM_5005"
"""A state enumeration would exceed ``max_states``."""

PSEM_5006_VECTOR_CAP = "PSEM_5006"
"""An input vector is longer than ``max_vector_len``."""

PSEM_5007_PREDICATE_CAP = "PSEM_5007"
"""A predicate expands to more vectors than ``max_pred_vectors``."""

# ---------------------------------------------------------------------------
# Triple, predicate and gadget errors (PSEM_6xxx)
# ---------------------------------------------------------------------------

PSEM_6001_PREDICATE_SYNTAX = "PSEM_6001"
"""A predicate formula is not in the predicate mini-language."""

PSEM_6002_TRIPLE_INVALID = "PSEM_6002"
"""A triple is malformed or its predicates do not fit its mode."""

PSEM_6003_SPLIT_INVALID = "PSEM_6003"
"""A grammar-disjunction split does not cover the nonterminal's productions."""

PSEM_6004_GADGET_PRECONDITION = "PSEM_6004"
"""The loop gadget cannot be built for the given set, vectors, or domain."""

# ---------------------------------------------------------------------------
# CLI and replication errors (PSEM_7xxx)
# ---------------------------------------------------------------------------

PSEM_7001_UNKNOWN_SUITE = "PSEM_7001"
"""The requested replication suite does not exist."""

PSEM_7002_INPUT_FILE_INVALID = "PSEM_7002"
"""A CLI input file is missing or not valid JSON of the expected shape."""

PSEM_7003_ARGUMENT_INVALID = "PSEM_7003"
"""A command-line option has a value outside its allowed range."""
