import io
import json

import numpy as np
import pytest

from src.core.exceptions import (
    CheckpointNotFoundError,
    CheckpointVersionError,
    ConfigHashMismatchError,
    CorruptCheckpointError,
)
from src.services.training import config_hash, load_checkpoint, save_checkpoint, train


@pytest.fixture
def trained(small_config, tiny_schedule):
    return train(small_config, tiny_schedule)


def test_round_trip_restores_parameters_and_optimizer(tmp_path, trained, tiny_schedule):
    path = save_checkpoint(tmp_path / "ckpt.npz", trained.model, tiny_schedule, 2, trained.history)
    state = load_checkpoint(path, expected_hash=trained.config_hash)

    assert state.round == 2
    assert state.model.adam.t == trained.model.adam.t
    assert state.history == trained.history
    for restored, original in zip(state.model.parameters(), trained.model.parameters()):
        np.testing.assert_array_equal(restored, original)
    for restored, original in zip(state.model.adam.v, trained.model.adam.v):
        np.testing.assert_array_equal(restored, original)


def test_missing_file(tmp_path):
    with pytest.raises(CheckpointNotFoundError):
        load_checkpoint(tmp_path / "absent.npz")


def test_truncated_file_is_corrupt(tmp_path, trained, tiny_schedule):
    path = save_checkpoint(tmp_path / "ckpt.npz", trained.model, tiny_schedule, 2, trained.history)
    data = path.read_bytes()
    path.write_bytes(data[: len(data) // 2])

    with pytest.raises(CorruptCheckpointError):
        load_checkpoint(path)


def test_hash_mismatch_is_refused(tmp_path, trained, tiny_schedule):
    path = save_checkpoint(tmp_path / "ckpt.npz", trained.model, tiny_schedule, 2, trained.history)
    with pytest.raises(ConfigHashMismatchError):
        load_checkpoint(path, expected_hash="0000000000000000")


def _rewrite_metadata(path, **changes):
    with np.load(path) as archive:
        arrays = {key: archive[key] for key in archive.files}
    meta = json.loads(str(arrays["metadata"]))
    meta.update(changes)
    arrays["metadata"] = np.array(json.dumps(meta))
    buffer = io.BytesIO()
    np.savez(buffer, **arrays)
    path.write_bytes(buffer.getvalue())


def test_unknown_format_version(tmp_path, trained, tiny_schedule):
    path = save_checkpoint(tmp_path / "ckpt.npz", trained.model, tiny_schedule, 2, trained.history)
    _rewrite_metadata(path, format_version=99)
    with pytest.raises(CheckpointVersionError):
        load_checkpoint(path)


def test_tampered_metadata_is_corrupt(tmp_path, trained, tiny_schedule):
    path = save_checkpoint(tmp_path / "ckpt.npz", trained.model, tiny_schedule, 2, trained.history)
    _rewrite_metadata(path, config_hash="ffffffffffffffff")
    with pytest.raises(CorruptCheckpointError):
        load_checkpoint(path)


def test_hash_ignores_round_count(small_config, tiny_schedule):
    longer = tiny_schedule.model_copy(update={"rounds": 50, "checkpoint_every": 5})
    assert config_hash(small_config, tiny_schedule) == config_hash(small_config, longer)

    reseeded = tiny_schedule.model_copy(update={"seed": 8})
    assert config_hash(small_config, tiny_schedule) != config_hash(small_config, reseeded)
