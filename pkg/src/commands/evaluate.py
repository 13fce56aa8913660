"""src.commands.evaluate
eval / baseline / sweep 명령: held-out 채널 BER 곡선과 비교 리포트
"""
import logging
from pathlib import Path

from src.commands.context import CommandContext, CommandResult
from src.core.exceptions import ConfigValidationError
from src.models.evaluation import BerCurve
from src.services.evaluation import (
    BaselineLinkSimulator,
    DaeLinkSimulator,
    ber_sweep,
    compare_curves,
    held_out_channels,
    write_comparison_csv,
    write_comparison_json,
    write_curve_csv,
    write_curve_json,
)
from src.services.training import TrainingState, load_checkpoint
from src.utils.common import stable_hash

logger = logging.getLogger(__name__)


def _curve_paths(directory: Path, stem: str) -> tuple[Path, Path]:
    return directory / f"{stem}.csv", directory / f"{stem}.json"


def _dae_curve(context: CommandContext, state: TrainingState, label: str | None = None) -> BerCurve:
    evaluation = context.config.evaluation
    channels, channel_set_id = held_out_channels(evaluation.seed, evaluation.n_channels)
    return ber_sweep(
        DaeLinkSimulator(state.model, label=label),
        channels,
        evaluation.grid(),
        evaluation.frames_per_point,
        evaluation.seed,
        channel_set_id=channel_set_id,
        config_hash=state.meta.config_hash,
        workers=context.workers,
    )


def _baseline_curve(context: CommandContext, n_s: int, power: float) -> BerCurve:
    config = context.config
    evaluation = config.evaluation
    frames = config.baseline_frames_per_point or evaluation.frames_per_point
    channels, channel_set_id = held_out_channels(evaluation.seed, evaluation.n_channels)
    baseline_hash = stable_hash({
        "baseline": {"n_s": n_s, "power": power, "frames_per_point": frames},
        "evaluation": evaluation.model_dump(mode="json"),
    })
    return ber_sweep(
        BaselineLinkSimulator(n_s, power),
        channels,
        evaluation.grid(),
        frames,
        evaluation.seed,
        channel_set_id=channel_set_id,
        config_hash=baseline_hash,
        workers=context.workers,
    )


def _write_curve(curve: BerCurve, csv_path: Path, json_path: Path) -> list[Path]:
    return [write_curve_csv(curve, csv_path), write_curve_json(curve, json_path)]


def run_eval(context: CommandContext) -> CommandResult:
    """체크포인트 하나 평가 → eval/ber_curve.csv, eval/ber_curve.json"""
    if len(context.checkpoints) != 1:
        raise ConfigValidationError("eval 명령에는 --checkpoint 하나가 필요합니다 (여러 개는 sweep 사용)")
    out = context.artifact_dir("eval")
    csv_path, json_path = _curve_paths(out, "ber_curve")
    context.claim(csv_path, json_path)

    state = load_checkpoint(context.checkpoints[0])
    curve = _dae_curve(context, state)
    return CommandResult(artifacts=_write_curve(curve, csv_path, json_path))


def run_baseline(context: CommandContext) -> CommandResult:
    """기준선 평가 → baseline/ber_curve.csv, baseline/ber_curve.json"""
    out = context.artifact_dir("baseline")
    csv_path, json_path = _curve_paths(out, "ber_curve")
    context.claim(csv_path, json_path)

    dae = context.config.dae
    curve = _baseline_curve(context, dae.n_s, dae.power)
    return CommandResult(artifacts=_write_curve(curve, csv_path, json_path))


def _label(state: TrainingState) -> str:
    dae = state.meta.dae
    shortcut = "res" if dae.residuals else "nores"
    return f"{dae.variant.value}_{dae.input_mode.value}_{shortcut}_ns{dae.n_s}"


def run_sweep(context: CommandContext) -> CommandResult:
    """
    체크포인트 목록(+ 선택적 기준선) 평가 후 첫 번째 곡선 기준 비교

    산출물: sweep/<label>.csv|json, sweep/comparison.csv, sweep/comparison.json
    """
    if not context.checkpoints:
        raise ConfigValidationError("sweep 명령에는 --checkpoint 가 하나 이상 필요합니다")
    out = context.artifact_dir("sweep")

    states = [load_checkpoint(path) for path in context.checkpoints]
    labels: list[str] = []
    for index, state in enumerate(states):
        label = _label(state)
        labels.append(label if label not in labels else f"{label}_{index}")
    if context.with_baseline:
        labels.append("baseline")

    comparison_csv, comparison_json = out / "comparison.csv", out / "comparison.json"
    context.claim(comparison_csv, comparison_json, *[path for label in labels for path in _curve_paths(out, label)])

    n_s_values = {state.meta.dae.n_s for state in states}
    if len(n_s_values) != 1:
        raise ConfigValidationError(f"N_s가 다른 체크포인트는 함께 비교할 수 없습니다: {sorted(n_s_values)}")

    curves = [_dae_curve(context, state, label) for state, label in zip(states, labels)]
    if context.with_baseline:
        first = states[0].meta.dae
        curves.append(_baseline_curve(context, first.n_s, first.power))

    artifacts = []
    for curve in curves:
        artifacts += _write_curve(curve, *_curve_paths(out, curve.label))
    comparison = compare_curves(*curves)
    artifacts.append(write_comparison_csv(curves, comparison, comparison_csv))
    artifacts.append(write_comparison_json(curves, comparison, comparison_json))
    return CommandResult(artifacts=artifacts)
