"""
Structured JSON logging for program-set-semantics.

Every record is one JSON line on stderr (and optionally a log file).  A
CLI run is tagged with a correlation ID and its command name through
:func:`run_context`, so the lines of one run can be grepped out of a
shared log.  Engine payloads such as state sets and answer tables can be
large; the formatter keeps only the first :data:`MAX_LOGGED_ITEMS` items
of any collection it finds in ``extra_data``.  Results never go through
logging, so stdout stays byte-identical between runs.
"""

import json
import logging
import sys
import uuid
from collections.abc import Iterator, Mapping
from contextlib import contextmanager
from contextvars import ContextVar
from datetime import UTC, datetime
from pathlib import Path
from typing import Any

MAX_LOGGED_ITEMS = 20

correlation_id_var: ContextVar[str] = ContextVar("correlation_id", default="")
command_var: ContextVar[str] = ContextVar("command", default="")


def generate_correlation_id() -> str:
    """Generate a new 12-character correlation ID."""
    return uuid.uuid4().hex[:12]


@contextmanager
def run_context(command: str, correlation_id: str | None = None) -> Iterator[str]:
    """Tag every record logged inside the block with one run's identity.

    Both context variables are restored on exit, so consecutive runs in
    one process (tests, the replication suites) never inherit each
    other's tags.

    Args:
        command: CLI command name (``check``, ``replicate``, ...).
        correlation_id: ID to use; a fresh one is generated when omitted.

    Yields:
        The correlation ID in effect for the block.
    """
    cid = correlation_id or generate_correlation_id()
    cid_token = correlation_id_var.set(cid)
    command_token = command_var.set(command)
    try:
        yield cid
    finally:
        command_var.reset(command_token)
        correlation_id_var.reset(cid_token)


def _compact(value: Any) -> Any:
    if isinstance(value, Mapping):
        return {str(k): _compact(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = list(value)
        if isinstance(value, (set, frozenset)):
            items.sort(key=repr)
        kept = [_compact(v) for v in items[:MAX_LOGGED_ITEMS]]
        if len(items) > MAX_LOGGED_ITEMS:
            kept.append(f"... (+{len(items) - MAX_LOGGED_ITEMS} more)")
        return kept
    return value


class StructuredJsonFormatter(logging.Formatter):
    """Serialise each record as a single-line JSON object.

    The object carries the timestamp, level, logger, module, function and
    message, the run tags when set, ``data`` from ``extra_data`` (with
    collections truncated) and a short exception summary.
    """

    def format(self, record: logging.LogRecord) -> str:
        entry: dict[str, Any] = {
            "timestamp": datetime.fromtimestamp(record.created, tz=UTC).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "module": record.module,
            "function": record.funcName,
            "message": record.getMessage(),
        }

        cid = correlation_id_var.get()
        if cid:
            entry["correlation_id"] = cid
        command = command_var.get()
        if command:
            entry["command"] = command

        extra_data = getattr(record, "extra_data", None)
        if isinstance(extra_data, dict):
            entry["data"] = _compact(extra_data)

        if record.exc_info and record.exc_info[1] is not None:
            exc = record.exc_info[1]
            entry["exception"] = {"type": type(exc).__name__, "message": str(exc)}
            code = getattr(exc, "error_code", None)
            if code:
                entry["exception"]["error_code"] = code

        return json.dumps(entry, default=str, ensure_ascii=False)


class StructuredLoggerAdapter(logging.LoggerAdapter):  # type: ignore[type-arg]
    """Logger adapter that forwards ``extra_data`` to the formatter."""

    def process(  # type: ignore[override]
        self, msg: str, kwargs: dict[str, Any]
    ) -> tuple[str, dict[str, Any]]:
        extra = kwargs.get("extra", {})
        if self.extra:
            extra.update(self.extra)
        kwargs["extra"] = extra
        return msg, kwargs

    def structured(
        self, level: int, msg: str, data: dict[str, Any] | None = None, **kwargs: Any
    ) -> None:
        """Log ``msg`` with ``data`` attached as ``extra_data``."""
        if data:
            kwargs.setdefault("extra", {})["extra_data"] = data
        self.log(level, msg, **kwargs)


def get_structured_logger(name: str) -> StructuredLoggerAdapter:
    """Return the structured logger for module ``name``."""
    return StructuredLoggerAdapter(logging.getLogger(name), {})


def setup_logging(
    level: str = "WARNING",
    log_dir: str | None = None,
    log_file: str = "progset.log",
) -> None:
    """Configure structured JSON logging on the root logger.

    Args:
        level: Log level name. Unknown names fall back to WARNING.
        log_dir: Directory for the log file. If ``None`` or empty, only
                 stderr is used.
        log_file: Log file name within ``log_dir``.
    """
    numeric_level = getattr(logging, level.upper(), logging.WARNING)
    formatter = StructuredJsonFormatter()

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)

    root = logging.getLogger()
    root.setLevel(numeric_level)
    root.handlers.clear()
    root.addHandler(console_handler)

    if log_dir:
        resolved_dir = Path(log_dir)
        resolved_dir.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(resolved_dir / log_file, encoding="utf-8")
        file_handler.setFormatter(formatter)
        root.addHandler(file_handler)
