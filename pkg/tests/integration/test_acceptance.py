"""
Acceptance runs of the replication suites.

The fixed suites run at full size.  The engine-equivalence suite runs
40 samples (half of them recursive grammars) on two seeds; the other
randomized suites run on small sample counts.  ``progset replicate`` runs
them all at their default sizes.
"""

import pytest

from progset_semantics.replication import get_default_registry

FIXED_SUITES = ["noncompositionality", "evenness", "vector-examples", "pbe"]
SAMPLED_SUITES = {"equivalence": 40, "reduce": 4, "gadget": 20, "granularity": 2}


@pytest.mark.integration
class TestReplicationSuites:
    """Every suite passes."""

    @pytest.mark.parametrize("name", FIXED_SUITES)
    def test_fixed_suite(self, name: str) -> None:
        (result,) = get_default_registry().run(name)
        assert result.passed, result.failures

    @pytest.mark.parametrize("name", sorted(SAMPLED_SUITES))
    def test_sampled_suite(self, name: str) -> None:
        (result,) = get_default_registry().run(name, samples=SAMPLED_SUITES[name], seed=1)
        assert result.passed, result.failures

    def test_equivalence_second_seed(self) -> None:
        (result,) = get_default_registry().run("equivalence", samples=40, seed=2)
        assert result.passed, result.failures
        assert {c.name: c.detail for c in result.checks}["vector-green"]["checked"] == 40
        assert {c.name: c.detail for c in result.checks}["recursive-samples"]["count"] == 20

    def test_seed_reproducibility(self) -> None:
        registry = get_default_registry()
        first = registry.run("equivalence", samples=3, seed=5)
        second = registry.run("equivalence", samples=3, seed=5)
        assert first == second
