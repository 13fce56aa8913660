import math

import numpy as np
import pytest

from src.core.exceptions import InvalidInputError, UnconfiguredModelError
from src.models.dae_config import DaeConfig
from src.models.evaluation import EvaluationConfig
from src.models.training import TrainSchedule
from src.services.baseline import analytic_ber
from src.services.channel import ChannelRealization, n0_from_ebn0_db
from src.services.dae import DaeModel
from src.services.evaluation import (
    BaselineLinkSimulator,
    DaeLinkSimulator,
    ber_sweep,
    frames_per_channel,
    held_out_channels,
    within_sigmas,
)
from src.services.training import train


def test_default_grid_has_thirteen_points():
    grid = EvaluationConfig().grid()
    assert len(grid) == 13
    assert grid[0] == -10.0 and grid[-1] == 20.0


def test_held_out_channels_are_reproducible():
    first, channel_set = held_out_channels(seed=1, count=3)
    second, _ = held_out_channels(seed=1, count=3)
    assert channel_set == "eval-s1-n3"
    for a, b in zip(first, second):
        np.testing.assert_array_equal(a.H, b.H)


def test_frames_are_spread_over_channels():
    assert frames_per_channel(20_000, 200) == 100
    assert frames_per_channel(10, 3) == 4


def test_baseline_sweep_rows(rng):
    channels, channel_set = held_out_channels(seed=1, count=4)
    grid = EvaluationConfig().grid()
    curve = ber_sweep(BaselineLinkSimulator(n_s=2), channels, grid, 400, 1, channel_set, "hash")

    assert len(curve.rows) == 13
    for row in curve.rows:
        assert row.snr_db - row.ebn0_db == pytest.approx(10 * math.log10(2), abs=1e-9)
        assert row.frames == 400
        assert row.ber_low <= row.ber <= row.ber_high
    assert curve.rows[0].ber > curve.rows[-1].ber


@pytest.mark.parametrize("ebn0_db", [0.0, 4.0, 8.0])
def test_single_bit_baseline_matches_bpsk_theory(ebn0_db, rng):
    channel = ChannelRealization.from_matrix(np.eye(2))
    simulator = BaselineLinkSimulator(n_s=1)
    counts = simulator.simulate(channel, n0_from_ebn0_db(20.0, 1, ebn0_db), 200_000, rng)
    assert within_sigmas(counts.bit_errors, counts.bits, analytic_ber(2, 10 ** (ebn0_db / 10)))


def test_untrained_model_is_not_evaluated(rng):
    with pytest.raises(UnconfiguredModelError):
        DaeLinkSimulator(DaeModel(DaeConfig(n_s=2), rng))


def test_empty_grid_is_rejected(rng):
    channels, channel_set = held_out_channels(seed=1, count=1)
    with pytest.raises(InvalidInputError):
        ber_sweep(BaselineLinkSimulator(n_s=1), channels, [], 10, 1, channel_set, "")


def test_sweep_is_deterministic_and_read_only(rng):
    model = DaeModel(DaeConfig(n_s=2, hidden_width=8), rng)
    before = [p.copy() for p in model.parameters()]
    simulator = DaeLinkSimulator(model, label="dae", require_trained=False)
    channels, channel_set = held_out_channels(seed=2, count=3)

    serial = ber_sweep(simulator, channels, [0.0, 10.0], 300, 2, channel_set, "")
    parallel = ber_sweep(simulator, channels, [0.0, 10.0], 300, 2, channel_set, "", workers=3)

    assert serial == parallel
    for param, original in zip(model.parameters(), before):
        np.testing.assert_array_equal(param, original)


@pytest.mark.slow
def test_trained_link_is_error_free_without_noise(rng):
    schedule = TrainSchedule(channels_per_round=100, batch_size=256, rounds=20, learning_rate=1e-3, decay=0.97)
    model = train(DaeConfig(n_s=2), schedule).model
    counts = DaeLinkSimulator(model).simulate(ChannelRealization.from_matrix(np.eye(2)), 0.0, 10_000, rng)
    assert counts.bit_errors == 0
