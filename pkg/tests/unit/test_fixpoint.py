"""
Tests for progset_semantics.fixpoint -- the demand-driven worklist solver.
"""

import pytest

from progset_semantics.error_codes import PSEM_5003_TABLE_CAP
from progset_semantics.errors import ResourceLimitError
from progset_semantics.fixpoint import Reader, WorklistSolver


def _union(old: frozenset[int], new: frozenset[int]) -> frozenset[int]:
    return old | new


def _make_cycle_solver(size: int, max_entries: int = 100) -> WorklistSolver[int, frozenset[int]]:
    """Key k reaches itself and k + 1 modulo ``size``."""

    def evaluate(k: int, read: Reader[int, frozenset[int]]) -> frozenset[int]:
        return frozenset({k}) | read((k + 1) % size)

    return WorklistSolver(evaluate, frozenset(), _union, max_entries, name="cycle")


class TestWorklistSolver:
    """Verify least-fixpoint computation over recursive equations."""

    def test_chain(self) -> None:
        def evaluate(k: int, read: Reader[int, frozenset[int]]) -> frozenset[int]:
            return frozenset({k}) | (read(k + 1) if k < 3 else frozenset())

        solver: WorklistSolver[int, frozenset[int]] = WorklistSolver(
            evaluate, frozenset(), _union, 100
        )
        assert solver.solve(0) == frozenset({0, 1, 2, 3})
        assert len(solver) == 4

    def test_cycle_converges(self) -> None:
        solver = _make_cycle_solver(3)
        assert solver.solve(0) == frozenset({0, 1, 2})
        assert solver.table[2] == frozenset({0, 1, 2})

    def test_self_loop_stays_least(self) -> None:
        def evaluate(k: int, read: Reader[int, frozenset[int]]) -> frozenset[int]:
            return read(k)

        solver: WorklistSolver[int, frozenset[int]] = WorklistSolver(
            evaluate, frozenset(), _union, 10
        )
        assert solver.solve(7) == frozenset()

    def test_solved_keys_are_reused(self) -> None:
        solver = _make_cycle_solver(3)
        solver.solve(0)
        evaluations = solver.evaluations
        assert solver.solve(1) == frozenset({0, 1, 2})
        assert solver.evaluations == evaluations

    def test_table_cap(self) -> None:
        with pytest.raises(ResourceLimitError) as exc_info:
            _make_cycle_solver(5, max_entries=2).solve(0)
        assert exc_info.value.error_code == PSEM_5003_TABLE_CAP
        assert exc_info.value.limit == 2
