from pathlib import Path

import pytest

from src.core.exceptions import EXIT_VALIDATION
from src.main import main

TINY = [
    "--set", "dae.n_s=2",
    "--set", "dae.hidden_width=8",
    "--set", "schedule.channels_per_round=4",
    "--set", "schedule.batch_size=32",
    "--set", "schedule.rounds=2",
    "--set", "schedule.checkpoint_every=1",
    "--set", "evaluation.n_channels=3",
    "--set", "evaluation.frames_per_point=30",
]


def _train(out: Path) -> Path:
    assert main(["train", "--output-dir", str(out), *TINY]) == 0
    return out / "train" / "checkpoint_final.npz"


def test_unknown_key_exits_with_validation_error(tmp_path, capsys):
    code = main(["baseline", "--output-dir", str(tmp_path), "--set", "dae.unknown=1"])
    assert code == EXIT_VALIDATION
    assert "dae.unknown" in capsys.readouterr().err


def test_eval_requires_checkpoint(tmp_path):
    assert main(["eval", "--output-dir", str(tmp_path), *TINY]) == EXIT_VALIDATION
    missing = ["--checkpoint", str(tmp_path / "absent.npz")]
    assert main(["eval", "--output-dir", str(tmp_path), *missing, *TINY]) == EXIT_VALIDATION


def test_train_then_eval(tmp_path):
    checkpoint = _train(tmp_path)
    assert (tmp_path / "train" / "checkpoint_r0001.npz").exists()
    history = (tmp_path / "train" / "history.csv").read_text().splitlines()
    assert len(history) == 4

    assert main(["eval", "--output-dir", str(tmp_path), "--checkpoint", str(checkpoint), *TINY]) == 0
    lines = (tmp_path / "eval" / "ber_curve.csv").read_text().splitlines()
    assert lines[0].startswith("# config_hash=")
    assert len(lines) == 2 + 13


def test_rerun_refuses_to_overwrite(tmp_path):
    _train(tmp_path)
    assert main(["train", "--output-dir", str(tmp_path), *TINY]) == EXIT_VALIDATION
    assert main(["train", "--output-dir", str(tmp_path), "--force", *TINY]) == 0


def test_identical_runs_produce_identical_files(tmp_path):
    for name in ("a", "b"):
        checkpoint = _train(tmp_path / name)
        code = main([
            "sweep", "--output-dir", str(tmp_path / name), "--checkpoint", str(checkpoint),
            "--with-baseline", "--workers", "2", *TINY,
        ])
        assert code == 0

    for relative in ("train/checkpoint_final.npz", "train/history.csv", "sweep/comparison.csv", "sweep/baseline.csv"):
        assert (tmp_path / "a" / relative).read_bytes() == (tmp_path / "b" / relative).read_bytes()


def test_resume_continues_training(tmp_path):
    _train(tmp_path / "full")
    longer = [*TINY, "--set", "schedule.rounds=3"]
    code = main([
        "train", "--output-dir", str(tmp_path / "resumed"),
        "--resume", str(tmp_path / "full" / "train" / "checkpoint_r0002.npz"), *longer,
    ])
    assert code == 0
    history = (tmp_path / "resumed" / "train" / "history.csv").read_text().splitlines()
    assert [line.split(",")[0] for line in history[2:]] == ["1", "2", "3"]


@pytest.mark.slow
def test_selftest_command(tmp_path):
    assert main(["selftest", "--output-dir", str(tmp_path)]) == 0
    assert (tmp_path / "selftest" / "report.json").exists()


def test_grad_check_command(tmp_path):
    code = main(["grad-check", "--output-dir", str(tmp_path), "--set", "dae.n_s=2", "--set", "dae.hidden_width=8"])
    assert code == 0
    assert (tmp_path / "grad_check" / "report.json").exists()
