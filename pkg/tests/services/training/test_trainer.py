import numpy as np
import pytest

from src.core.exceptions import ConfigHashMismatchError, DivergenceError
from src.models.dae_config import DaeConfig, DaeVariant
from src.models.training import TrainSchedule
from src.services.dae import DaeModel
from src.services.training import DIVERGENCE_DUMP, load_checkpoint, train, write_history_csv


def test_learning_rate_decays_per_round():
    schedule = TrainSchedule(learning_rate=1e-4, decay=0.995)
    assert schedule.learning_rate_at(1) == 1e-4
    assert schedule.learning_rate_at(3) == pytest.approx(9.90025e-5, rel=1e-12)


def test_one_optimizer_step_per_channel_per_round(small_config, tiny_schedule):
    result = train(small_config, tiny_schedule)
    assert result.model.adam.t == tiny_schedule.rounds * tiny_schedule.channels_per_round
    assert [record.round for record in result.history] == [1, 2]
    assert result.history[1].lr == pytest.approx(tiny_schedule.learning_rate * tiny_schedule.decay)


def test_same_seed_gives_identical_weights(small_config, tiny_schedule):
    first = train(small_config, tiny_schedule)
    second = train(small_config, tiny_schedule)
    for a, b in zip(first.model.parameters(), second.model.parameters()):
        np.testing.assert_array_equal(a, b)


def test_resumed_run_matches_uninterrupted_run(tmp_path, small_config):
    schedule = TrainSchedule(
        channels_per_round=3, batch_size=16, rounds=5, learning_rate=1e-3, decay=0.9, seed=11, checkpoint_every=1
    )
    full = train(small_config, schedule, checkpoint_dir=tmp_path)
    assert (tmp_path / "checkpoint_r0003.npz").exists()
    assert (tmp_path / "checkpoint_final.npz").exists()

    state = load_checkpoint(tmp_path / "checkpoint_r0003.npz", expected_hash=full.config_hash)
    resumed = train(small_config, schedule, resume=state)

    assert resumed.model.adam.t == full.model.adam.t
    assert [r.mean_loss for r in resumed.history] == [r.mean_loss for r in full.history]
    for a, b in zip(resumed.model.parameters(), full.model.parameters()):
        np.testing.assert_array_equal(a, b)


def test_resume_with_other_settings_is_refused(tmp_path, small_config, tiny_schedule):
    train(small_config, tiny_schedule, checkpoint_dir=tmp_path)
    state = load_checkpoint(tmp_path / "checkpoint_final.npz")
    changed = tiny_schedule.model_copy(update={"learning_rate": 5e-4})
    with pytest.raises(ConfigHashMismatchError):
        train(small_config, changed, resume=state)


def test_divergence_stops_training_and_dumps_state(tmp_path, small_config, tiny_schedule, monkeypatch):
    def diverging(self, link, bits, noise):
        return float("nan"), [np.zeros_like(p) for p in self.parameters()]

    monkeypatch.setattr(DaeModel, "loss_and_grads", diverging)
    with pytest.raises(DivergenceError):
        train(small_config, tiny_schedule, checkpoint_dir=tmp_path)
    assert (tmp_path / DIVERGENCE_DUMP).exists()


def test_history_csv(tmp_path, small_config, tiny_schedule):
    result = train(small_config, tiny_schedule)
    path = write_history_csv(tmp_path / "history.csv", result.history, result.config_hash, tiny_schedule.seed)
    lines = path.read_text().splitlines()
    assert lines[0] == f"# config_hash={result.config_hash} seed={tiny_schedule.seed}"
    assert lines[1] == "round,lr,mean_loss"
    assert len(lines) == 2 + tiny_schedule.rounds


def test_loss_decreases_on_single_channel():
    config = DaeConfig(n_s=2)
    first, last = [], []
    for seed in range(5):
        schedule = TrainSchedule(
            channels_per_round=1, batch_size=64, rounds=50, learning_rate=1e-3, decay=1.0,
            n0_range_db=(0.0, 0.0), seed=seed,
        )
        history = train(config, schedule).history
        first.append(history[0].mean_loss)
        last.append(history[-1].mean_loss)
    assert np.mean(last) < np.mean(first)


@pytest.mark.slow
def test_svd_embedding_beats_plain_dae():
    from src.services.evaluation import DaeLinkSimulator, ber_sweep, held_out_channels

    channels, channel_set = held_out_channels(seed=1, count=200)
    ratios = []
    for seed in range(3):
        bers = {}
        for variant in (DaeVariant.SVD, DaeVariant.PLAIN):
            config = DaeConfig(variant=variant, n_s=4)
            schedule = TrainSchedule(
                channels_per_round=200, batch_size=500, rounds=60, learning_rate=1e-3, decay=0.97, seed=seed
            )
            model = train(config, schedule).model
            curve = ber_sweep(DaeLinkSimulator(model), channels, [10.0], 20000, 1, channel_set, "")
            bers[variant] = curve.rows[0].ber
        ratios.append(bers[DaeVariant.PLAIN] / max(bers[DaeVariant.SVD], 1e-12))
    assert np.mean(ratios) >= 2.0


@pytest.mark.slow
def test_residual_shortcuts_help_at_high_snr():
    from src.services.evaluation import DaeLinkSimulator, ber_sweep, held_out_channels

    channels, channel_set = held_out_channels(seed=1, count=200)
    totals = {True: 0.0, False: 0.0}
    for seed in range(3):
        for residuals in (True, False):
            config = DaeConfig(n_s=4, residuals=residuals)
            schedule = TrainSchedule(
                channels_per_round=200, batch_size=500, rounds=60, learning_rate=1e-3, decay=0.97, seed=seed
            )
            model = train(config, schedule).model
            totals[residuals] += ber_sweep(DaeLinkSimulator(model), channels, [15.0], 20000, 1, channel_set, "").rows[0].ber
    assert totals[True] <= totals[False]
