"""
Configuration management for program-set-semantics.

Uses Pydantic BaseSettings for type-safe configuration loaded from
environment variables with the ``PSEM_`` prefix, ``.env`` files,
and sensible defaults.  The settings supply the default finite state
domain and every resource cap the engines enforce.
"""

from pathlib import Path

from pydantic import Field, computed_field
from pydantic_settings import BaseSettings, SettingsConfigDict

from progset_semantics.models.domain import DomainCaps, DomainConfig


class SemanticsConfig(BaseSettings):
    """Main application configuration.

    All settings can be overridden via environment variables prefixed with ``PSEM_``.
    For example, ``PSEM_DOMAIN_HI`` sets :pyattr:`domain_hi`.
    """

    model_config = SettingsConfigDict(
        env_prefix="PSEM_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )

    # Core directories
    data_dir: str = Field(
        default=".progset",
        description="Root data directory for saved run reports.",
    )
    log_level: str = Field(
        default="WARNING",
        description="Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL).",
    )
    log_dir: str = Field(
        default="",
        description="Directory for log files. If empty, logs go to stderr only.",
    )

    # Default state domain
    domain_lo: int = Field(
        default=-8,
        description="Smallest representable integer; arithmetic saturates here.",
    )
    domain_hi: int = Field(
        default=8,
        description="Largest representable integer; arithmetic saturates here.",
    )

    # Resource caps
    max_vector_len: int = Field(
        default=6,
        description="Longest input vector accepted by the vector engines.",
    )
    max_trace_len: int = Field(
        default=0,
        description="Longest loop trace segment; 0 means |reachable states| + 1.",
    )
    max_table_entries: int = Field(
        default=500_000,
        description="Largest number of memoised denotation-table entries per engine.",
    )
    max_states: int = Field(
        default=200_000,
        description="Largest state enumeration the domain will materialise.",
    )
    max_programs: int = Field(
        default=100_000,
        description="Largest number of programs a bounded enumeration may produce.",
    )
    step_budget: int = Field(
        default=5_000_000,
        description="Loop iterations allowed per single-program evaluation.",
    )

    # Engine defaults
    default_depth: int = Field(
        default=6,
        description="Derivation depth used by oracle engines when none is given.",
    )
    probe_vector_len: int = Field(
        default=2,
        description="Longest probe vector used by granularity comparisons.",
    )
    pred_max_len: int = Field(
        default=1,
        description="Longest vector a pointwise predicate expands to by default.",
    )
    max_pred_vectors: int = Field(
        default=200_000,
        description="Largest number of vectors a predicate may expand to.",
    )

    @computed_field  # type: ignore[prop-decorator]
    @property
    def reports_dir(self) -> str:
        """Computed report directory derived from :pyattr:`data_dir`."""
        return str(Path(self.data_dir) / "reports")

    def default_caps(self) -> DomainCaps:
        """Return the resource caps configured by these settings."""
        return DomainCaps(
            max_vector_len=self.max_vector_len,
            max_trace_len=self.max_trace_len or None,
            max_table_entries=self.max_table_entries,
            max_states=self.max_states,
            max_programs=self.max_programs,
            step_budget=self.step_budget,
        )

    def default_domain(self, tracked_vars: list[str] | None = None) -> DomainConfig:
        """Build the default :class:`DomainConfig` from these settings.

        Args:
            tracked_vars: Program variables the domain tracks. May be empty
                when the caller fills them in from a grammar later.
        """
        return DomainConfig(
            lo=self.domain_lo,
            hi=self.domain_hi,
            tracked_vars=list(tracked_vars or []),
            caps=self.default_caps(),
        )


# ---------------------------------------------------------------------------
# Global configuration singleton
# ---------------------------------------------------------------------------

_config: SemanticsConfig | None = None


def get_config() -> SemanticsConfig:
    """Return the global :class:`SemanticsConfig` singleton.

    Creates the instance on first call.  Subsequent calls return the same
    instance.  Call :func:`reset_config` in tests to clear the singleton.
    """
    global _config
    if _config is None:
        _config = SemanticsConfig()
    return _config


def reset_config() -> None:
    """Reset the global config singleton.

    Intended for use in test fixtures to ensure a clean config per test.
    """
    global _config
    _config = None
