"""src.services.training.trainer
채널 순회 확률적 학습 루프

라운드 r = 1..M_r 마다 고정된 학습 채널 M_c개를 같은 순서로 순회하며, 채널마다
N0 추출 → 고정 레이어 설정 → 배치 M_b forward/backward → Adam 1스텝을 수행합니다.
라운드가 끝나면 학습률에 α_r을 곱합니다 (r 라운드 학습률 = l_r · α_r^(r−1)).

(round, channel) 마다 마스터 시드에서 파생한 독립 난수 스트림을 사용하므로
체크포인트에서 재개한 실행은 중단 없는 실행과 비트 단위로 같습니다.
"""
import csv
import io
import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from src.core.exceptions import ConfigHashMismatchError, DivergenceError, InvalidInputError
from src.models.dae_config import DaeConfig
from src.models.training import RoundRecord, TrainSchedule
from src.services.channel import ChannelRealization, sample_channels
from src.services.dae import DaeModel
from src.services.neural import adam_step
from src.services.training.checkpoint import TrainingState, config_hash, save_checkpoint
from src.utils.common import (
    STREAM_INIT,
    STREAM_TRAIN_CHANNELS,
    STREAM_TRAIN_STEP,
    atomic_write_bytes,
    atomic_write_text,
    derive_rng,
)

logger = logging.getLogger(__name__)

DIVERGENCE_DUMP = "divergence_dump.npz"
HISTORY_COLUMNS = ("round", "lr", "mean_loss")


@dataclass
class TrainingResult:
    """학습 결과 (모델, 라운드 기록, 저장된 체크포인트)"""
    model: DaeModel
    history: list[RoundRecord]
    config_hash: str
    checkpoints: list[Path] = field(default_factory=list)


@dataclass(frozen=True)
class TrainingStep:
    """(round, channel) 한 스텝의 난수 입력"""
    noise_power: float
    bits: np.ndarray
    noise: np.ndarray


def training_channels(schedule: TrainSchedule, config: DaeConfig) -> list[ChannelRealization]:
    """학습 시작 시 한 번 생성하여 매 라운드 재사용하는 채널 집합"""
    rng = derive_rng(schedule.seed, STREAM_TRAIN_CHANNELS)
    return sample_channels(rng, schedule.channels_per_round, config.n_r, config.n_t)


def draw_step(model: DaeModel, schedule: TrainSchedule, round_index: int, channel_index: int) -> TrainingStep:
    """N0 ~ U[dB 범위], 비트 ~ Bernoulli(0.5), 잡음 ~ CN(0, N0)"""
    rng = derive_rng(schedule.seed, STREAM_TRAIN_STEP, round_index, channel_index)
    low, high = schedule.n0_range_db
    noise_power = 10.0 ** (rng.uniform(low, high) / 10.0)
    bits = 2.0 * rng.integers(0, 2, size=(schedule.batch_size, model.config.n_s)) - 1.0
    noise = model.draw_noise(rng, schedule.batch_size, noise_power)
    return TrainingStep(noise_power=noise_power, bits=bits, noise=noise)


def _dump_divergence(
    dump_dir: Path,
    model: DaeModel,
    step: TrainingStep,
    round_index: int,
    channel_index: int,
    channel: ChannelRealization
) -> Path:
    arrays = {f"param_{index:03d}": param for index, param in enumerate(model.parameters())}
    arrays.update(
        bits=step.bits,
        noise=step.noise,
        H=channel.H,
        noise_power=np.array(step.noise_power),
        round=np.array(round_index),
        channel=np.array(channel_index),
    )
    buffer = io.BytesIO()
    np.savez(buffer, **arrays)
    path = dump_dir / DIVERGENCE_DUMP
    atomic_write_bytes(path, buffer.getvalue())
    return path


def train(
    config: DaeConfig,
    schedule: TrainSchedule,
    checkpoint_dir: Path | None = None,
    resume: TrainingState | None = None,
    on_round: Callable[[RoundRecord], None] | None = None
) -> TrainingResult:
    """
    DAE 학습

    Args:
        config: DAE 구조 설정
        schedule: 학습 스케줄
        checkpoint_dir: 체크포인트/발산 덤프 저장 디렉토리 (None이면 저장 안 함)
        resume: 이어서 학습할 체크포인트 상태
        on_round: 라운드 종료 콜백

    Returns:
        TrainingResult

    Raises:
        ConfigHashMismatchError: resume 체크포인트의 설정이 현재 설정과 다른 경우
        DivergenceError: 배치 손실이 유한하지 않은 경우 (상태 덤프 후 중단)
    """
    expected_hash = config_hash(config, schedule)
    if resume is not None:
        if resume.meta.config_hash != expected_hash:
            raise ConfigHashMismatchError(
                f"재개 체크포인트 설정 해시({resume.meta.config_hash})가 현재 설정({expected_hash})과 다릅니다"
            )
        if resume.round > schedule.rounds:
            raise InvalidInputError(f"체크포인트 라운드({resume.round})가 목표 라운드({schedule.rounds})보다 큽니다")
        model, history, start = resume.model, resume.history, resume.round + 1
        logger.info(f"체크포인트 round {resume.round} 에서 학습 재개")
    else:
        model, history, start = DaeModel(config, derive_rng(schedule.seed, STREAM_INIT)), [], 1

    channels = training_channels(schedule, config)
    checkpoints: list[Path] = []
    logger.info(
        f"학습 시작: variant={config.variant.value}, mode={config.input_mode.value}, N_s={config.n_s}, "
        f"M_c={schedule.channels_per_round}, M_b={schedule.batch_size}, M_r={schedule.rounds}"
    )

    for round_index in range(start, schedule.rounds + 1):
        lr = schedule.learning_rate_at(round_index)
        losses = np.empty(len(channels))

        for channel_index, channel in enumerate(channels):
            step = draw_step(model, schedule, round_index, channel_index)
            link = model.configure(channel.with_noise(step.noise_power))
            loss, grads = model.loss_and_grads(link, step.bits, step.noise)

            if not np.isfinite(loss) or not all(np.all(np.isfinite(g)) for g in grads):
                detail = f"round={round_index}, channel={channel_index}, N0={step.noise_power:.3e}, loss={loss}"
                if checkpoint_dir is not None:
                    dump = _dump_divergence(checkpoint_dir, model, step, round_index, channel_index, channel)
                    detail += f", dump={dump}"
                raise DivergenceError(f"학습 손실이 발산했습니다: {detail}")

            adam_step(model.parameters(), grads, model.adam, lr)
            losses[channel_index] = loss

        record = RoundRecord(round=round_index, lr=lr, mean_loss=float(np.mean(losses)))
        history.append(record)
        logger.info(f"round {round_index}/{schedule.rounds}: lr={lr:.6e}, mean_loss={record.mean_loss:.6f}")
        if on_round is not None:
            on_round(record)

        if checkpoint_dir is not None and schedule.checkpoint_every and round_index % schedule.checkpoint_every == 0:
            path = checkpoint_dir / f"checkpoint_r{round_index:04d}.npz"
            checkpoints.append(save_checkpoint(path, model, schedule, round_index, history))

    if checkpoint_dir is not None:
        final = checkpoint_dir / "checkpoint_final.npz"
        checkpoints.append(save_checkpoint(final, model, schedule, schedule.rounds, history))

    return TrainingResult(model=model, history=history, config_hash=expected_hash, checkpoints=checkpoints)


def write_history_csv(path: Path, history: list[RoundRecord], config_hash_value: str, seed: int) -> Path:
    """round,lr,mean_loss CSV (첫 줄은 설정 해시/시드 주석)"""
    buffer = io.StringIO()
    buffer.write(f"# config_hash={config_hash_value} seed={seed}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(HISTORY_COLUMNS)
    for record in history:
        writer.writerow([record.round, repr(record.lr), repr(record.mean_loss)])
    atomic_write_text(path, buffer.getvalue())
    return path
