"""
Demand-driven worklist solver for memoised denotation tables.

Engines describe one equation per key (``evaluate``); the solver starts
every key at bottom, re-evaluates keys whose inputs changed and stops at
quiescence.  Reading a key registers the reader as a dependent, so an
update re-enqueues exactly the keys that looked at the old value.
"""

import logging
from collections import deque
from collections.abc import Callable, Hashable
from typing import Any, Generic, TypeVar

from progset_semantics.error_codes import PSEM_5003_TABLE_CAP
from progset_semantics.errors import ResourceLimitError
from progset_semantics.logging_config import get_structured_logger

logger: logging.LoggerAdapter[Any] = get_structured_logger(__name__)

K = TypeVar("K", bound=Hashable)
V = TypeVar("V")

Reader = Callable[[K], V]


class WorklistSolver(Generic[K, V]):
    """Least-fixpoint solver over a growing table.

    Args:
        evaluate: ``evaluate(key, read)`` computes the right-hand side of
            ``key``'s equation, reading other keys through ``read``.
        bottom: Initial value of every key.
        join: Combines the stored value with a fresh evaluation.
        max_entries: Cap on the number of table entries.
        name: Label used in logs and cap errors.
    """

    def __init__(
        self,
        evaluate: Callable[[K, Reader[K, V]], V],
        bottom: V,
        join: Callable[[V, V], V],
        max_entries: int,
        name: str = "table",
    ) -> None:
        self._evaluate = evaluate
        self._bottom = bottom
        self._join = join
        self._max_entries = max_entries
        self._name = name
        self.table: dict[K, V] = {}
        self._dependents: dict[K, set[K]] = {}
        self._worklist: deque[K] = deque()
        self._queued: set[K] = set()
        self.evaluations = 0

    def __len__(self) -> int:
        return len(self.table)

    def _add(self, key: K) -> None:
        if len(self.table) >= self._max_entries:
            logger.warning(
                "Denotation table cap reached",
                extra={"extra_data": {"table": self._name, "cap": self._max_entries}},
            )
            raise ResourceLimitError(
                PSEM_5003_TABLE_CAP, "max_table_entries", self._max_entries, self._name
            )
        self.table[key] = self._bottom
        self._enqueue(key)

    def _enqueue(self, key: K) -> None:
        if key not in self._queued:
            self._worklist.append(key)
            self._queued.add(key)

    def solve(self, key: K) -> V:
        """Return the least-fixpoint value of ``key``.

        Entries computed by earlier calls are reused; they are already
        stable and cannot change.
        """
        if key in self.table and not self._worklist:
            return self.table[key]
        if key not in self.table:
            self._add(key)
        before = self.evaluations
        while self._worklist:
            current = self._worklist.popleft()
            self._queued.discard(current)

            def read(other: K, _reader: K = current) -> V:
                self._dependents.setdefault(other, set()).add(_reader)
                if other not in self.table:
                    self._add(other)
                return self.table[other]

            self.evaluations += 1
            old = self.table[current]
            new = self._join(old, self._evaluate(current, read))
            if new != old:
                self.table[current] = new
                for dependent in self._dependents.get(current, ()):
                    self._enqueue(dependent)
        logger.debug(
            "Fixpoint reached",
            extra={
                "extra_data": {
                    "table": self._name,
                    "entries": len(self.table),
                    "evaluations": self.evaluations - before,
                }
            },
        )
        return self.table[key]
