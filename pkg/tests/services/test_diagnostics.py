import pytest

from src.services.diagnostics import (
    check_frozen_identity,
    check_link_budget,
    check_power_constraint,
    check_svd,
    check_waterfill,
    run_selftest,
)


def test_link_budget_table():
    assert check_link_budget().passed


@pytest.mark.parametrize(
    "check",
    [
        lambda rng: check_svd(rng, count=500),
        lambda rng: check_waterfill(rng, count=500),
        lambda rng: check_frozen_identity(rng, count=100),
        lambda rng: check_power_constraint(rng, n_channels=10, batch=100),
    ],
)
def test_individual_oracles(check, rng):
    result = check(rng)
    assert result.passed, result.detail


def test_selftest_passes_and_is_reproducible():
    first = run_selftest(seed=0, qam_bits=1_000_000)
    assert first.passed, [check.name for check in first.checks if not check.passed]
    assert [check.name for check in first.checks] == [
        "svd", "waterfill", "link_budget", "frozen_identity", "power_constraint", "qam_ber",
    ]

    second = run_selftest(seed=0, qam_bits=1_000_000)
    assert first.model_dump() == second.model_dump()
