"""
Canonical JSON payloads and saved run reports.

Every command's stdout payload is produced by :func:`canonical_json`, so
two runs with the same inputs and caps print identical bytes.  Reports
saved with ``--save`` are written atomically under ``reports_dir``.
"""

import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Any

from progset_semantics.logging_config import get_structured_logger
from progset_semantics.models.domain import DomainConfig
from progset_semantics.models.reports import RunReport

logger: logging.LoggerAdapter[Any] = get_structured_logger(__name__)


def canonical_json(obj: Any, indent: int | None = 2) -> str:
    """Serialise with sorted keys and fixed separators."""
    separators = (",", ": ") if indent is not None else (",", ":")
    return json.dumps(obj, sort_keys=True, indent=indent, separators=separators, ensure_ascii=False)


def config_digest(domain: DomainConfig, engine: str | None = None, depth: int | None = None) -> str:
    """First 16 hex characters of the SHA-256 of the run configuration."""
    payload = {"domain": domain.model_dump(mode="json"), "engine": engine, "depth": depth}
    return hashlib.sha256(canonical_json(payload, indent=None).encode("utf-8")).hexdigest()[:16]


def render_report(report: RunReport, timing: bool = False) -> str:
    """The stdout payload of a report; wall time only appears with ``timing``."""
    data = report.model_dump(mode="json")
    if not timing:
        data["counters"].pop("wall_time_s", None)
    return canonical_json(data)


class ReportStore:
    """Saves run reports as JSON files.

    Args:
        reports_dir: Directory the reports are written to.
    """

    def __init__(self, reports_dir: Path) -> None:
        self._reports_dir = reports_dir
        self._reports_dir.mkdir(parents=True, exist_ok=True)

    def save(self, report: RunReport, name: str | None = None) -> Path:
        """Write ``report`` atomically (temp file, then rename).

        Args:
            report: The report.
            name: File stem; defaults to ``<command>-<config digest>``.

        Returns:
            Path to the saved report.

        Raises:
            OSError: If the file cannot be written.
        """
        stem = name or f"{report.command}-{report.config_digest}"
        target = self._reports_dir / f"{stem}.json"
        tmp = self._reports_dir / f"{stem}.json.tmp"
        try:
            with open(tmp, "w", encoding="utf-8") as f:
                f.write(render_report(report, timing=True))
                f.write("\n")
            os.replace(tmp, target)
        except OSError:
            if tmp.exists():
                tmp.unlink()
            logger.error(
                "Failed to save run report",
                extra={"extra_data": {"path": str(target)}},
                exc_info=True,
            )
            raise
        logger.info(
            "Run report saved",
            extra={"extra_data": {"command": report.command, "path": str(target)}},
        )
        return target

    def load(self, name: str) -> RunReport | None:
        """Read a saved report back, or ``None`` when it does not exist."""
        target = self._reports_dir / f"{name}.json"
        if not target.exists():
            return None
        with open(target, encoding="utf-8") as f:
            return RunReport.model_validate(json.load(f))
