"""
Base exceptions shared by every module of program-set-semantics.

Module-specific errors subclass :class:`SemanticsError` next to the code
that raises them; only the cross-cutting resource error lives here.
"""


class SemanticsError(Exception):
    """Base exception carrying a machine-readable ``PSEM_XXXX`` code."""

    def __init__(self, error_code: str, message: str) -> None:
        self.error_code = error_code
        self.message = message
        super().__init__(f"[{error_code}] {message}")


class ResourceLimitError(SemanticsError):
    """Raised when a configured cap is exceeded.

    Caps guard against configuration mistakes; hitting one is reported,
    never converted into a (wrong) answer.

    Attributes:
        resource: Name of the exhausted resource (e.g. ``"max_programs"``).
        limit: The configured cap.
    """

    def __init__(self, error_code: str, resource: str, limit: int, detail: str = "") -> None:
        self.resource = resource
        self.limit = limit
        suffix = f": {detail}" if detail else ""
        super().__init__(error_code, f"{resource} cap of {limit} exceeded{suffix}")
