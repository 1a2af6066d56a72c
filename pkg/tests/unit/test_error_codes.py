"""
Tests for progset_semantics.error_codes -- verify error code format and uniqueness.
"""

import progset_semantics.error_codes as ec
from progset_semantics.errors import ResourceLimitError, SemanticsError


class TestErrorCodeFormat:
    """Verify that all error codes follow the PSEM_XXXX format."""

    def _get_all_error_codes(self) -> list[tuple[str, str]]:
        """Return all (name, value) pairs that are error code constants."""
        return [
            (name, getattr(ec, name))
            for name in dir(ec)
            if name.startswith("PSEM_") and isinstance(getattr(ec, name), str)
        ]

    def test_all_codes_follow_format(self) -> None:
        codes = self._get_all_error_codes()
        assert len(codes) > 0, "No error codes found"
        for name, value in codes:
            assert value.startswith("PSEM_"), f"{name} value {value!r} does not start with PSEM_"
            suffix = value.removeprefix("PSEM_")
            assert suffix.isdigit(), f"{name} value {value!r} suffix is not numeric: {suffix!r}"
            assert name.startswith(value), f"{name} does not carry its value {value!r}"

    def test_all_codes_unique(self) -> None:
        codes = self._get_all_error_codes()
        values = [v for _, v in codes]
        assert len(values) == len(set(values)), "Duplicate error code values found"

    def test_syntax_errors_in_1xxx(self) -> None:
        assert ec.PSEM_1001_TERM_SYNTAX == "PSEM_1001"
        assert ec.PSEM_1003_RESERVED_NAME == "PSEM_1003"

    def test_grammar_errors_in_2xxx(self) -> None:
        assert ec.PSEM_2001_GRAMMAR_INVALID == "PSEM_2001"
        assert ec.PSEM_2003_GRAMMAR_SYNTAX == "PSEM_2003"

    def test_resource_caps_in_5xxx(self) -> None:
        assert ec.PSEM_5001_ENUMERATION_CAP == "PSEM_5001"
        assert ec.PSEM_5007_PREDICATE_CAP == "PSEM_5007"


class TestErrors:
    """Verify the shared exception types."""

    def test_message_carries_code(self) -> None:
        err = SemanticsError(ec.PSEM_6002_TRIPLE_INVALID, "bad triple")
        assert str(err) == "[PSEM_6002] bad triple"
        assert err.error_code == "PSEM_6002"
        assert err.message == "bad triple"

    def test_resource_limit(self) -> None:
        err = ResourceLimitError(ec.PSEM_5001_ENUMERATION_CAP, "max_programs", 10, "depth 4")
        assert isinstance(err, SemanticsError)
        assert err.resource == "max_programs"
        assert err.limit == 10
        assert err.message == "max_programs cap of 10 exceeded: depth 4"
