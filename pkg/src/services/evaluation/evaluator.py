"""src.services.evaluation.evaluator
held-out 채널 집합에 대한 Monte Carlo BER/SER 스윕

(격자점, 채널) 작업마다 독립 난수 스트림을 쓰고, 결과는 작업 순서대로 합산하므로
워커 수와 무관하게 같은 시드 → 같은 곡선이 나옵니다.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Protocol

import numpy as np

from src.core.exceptions import InvalidInputError, UnconfiguredModelError
from src.models.error_counts import FrameErrorCounts
from src.models.evaluation import BerCurve, BerRow
from src.services.baseline import choose_allocation, simulate_allocation
from src.services.channel import ChannelRealization, LinkUnit, convert_link, n0_from_ebn0_db, sample_channels
from src.services.dae import DaeModel, count_errors
from src.services.evaluation.intervals import wilson_interval
from src.utils.common import STREAM_EVAL_CHANNELS, STREAM_EVAL_POINT, derive_rng

logger = logging.getLogger(__name__)

FRAME_CHUNK = 10000


class LinkSimulator(Protocol):
    """채널 하나에서 프레임을 전송하고 오류를 세는 링크"""
    label: str
    n_s: int
    power: float

    def simulate(
        self,
        channel: ChannelRealization,
        noise_power: float,
        n_frames: int,
        rng: np.random.Generator
    ) -> FrameErrorCounts:
        ...


class DaeLinkSimulator:
    """학습된 DAE 링크 (파라미터는 읽기 전용)"""

    def __init__(self, model: DaeModel, label: str | None = None, require_trained: bool = True):
        if require_trained and not model.is_trained:
            raise UnconfiguredModelError("학습되지 않은 모델은 평가할 수 없습니다 (체크포인트를 지정하세요)")
        self.model = model
        self.label = label or f"dae-{model.config.variant.value}"
        self.n_s = model.config.n_s
        self.power = model.config.power

    def simulate(
        self,
        channel: ChannelRealization,
        noise_power: float,
        n_frames: int,
        rng: np.random.Generator
    ) -> FrameErrorCounts:
        link = self.model.configure(channel.with_noise(noise_power))
        total = FrameErrorCounts.empty(self.n_s)
        remaining = n_frames
        while remaining > 0:
            batch = min(remaining, FRAME_CHUNK)
            bits = 2.0 * rng.integers(0, 2, size=(batch, self.n_s)) - 1.0
            noise = self.model.draw_noise(rng, batch, noise_power)
            raw = self.model.forward(link, bits, noise).raw
            total = total + count_errors(self.model.decide(raw), bits)
            remaining -= batch
        return total


class BaselineLinkSimulator:
    """SVD 프리코딩 + 적응 변조 기준선"""

    def __init__(self, n_s: int, power: float = 20.0, label: str = "baseline"):
        self.label = label
        self.n_s = n_s
        self.power = power

    def simulate(
        self,
        channel: ChannelRealization,
        noise_power: float,
        n_frames: int,
        rng: np.random.Generator
    ) -> FrameErrorCounts:
        allocation = choose_allocation(channel.singular_values, noise_power, self.power, self.n_s)
        return simulate_allocation(channel.with_noise(noise_power), allocation, self.power, n_frames, rng)


def held_out_channels(seed: int, count: int, n_r: int = 2, n_t: int = 2) -> tuple[list[ChannelRealization], str]:
    """
    학습 채널과 분리된 스트림에서 평가 채널 집합을 생성합니다.

    Returns:
        tuple: (채널 목록, 채널 집합 식별자)
    """
    channels = sample_channels(derive_rng(seed, STREAM_EVAL_CHANNELS), count, n_r, n_t)
    return channels, f"eval-s{seed}-n{count}"


def frames_per_channel(frames_per_point: int, n_channels: int) -> int:
    """격자점당 프레임을 채널에 균등 분배 (올림)"""
    return math.ceil(frames_per_point / n_channels)


def ber_sweep(
    simulator: LinkSimulator,
    channels: list[ChannelRealization],
    grid_db: list[float] | np.ndarray,
    frames_per_point: int,
    seed: int,
    channel_set_id: str,
    config_hash: str,
    workers: int = 1
) -> BerCurve:
    """
    Eb/N0 격자 BER 스윕

    Args:
        simulator: DAE 또는 기준선 링크
        channels: 평가 채널 집합
        grid_db: Eb/N0 격자 (dB)
        frames_per_point: 격자점당 총 프레임 수
        seed: 평가 시드
        channel_set_id: 채널 집합 식별자
        config_hash: 곡선 메타데이터에 기록할 설정 해시
        workers: 병렬 워커 수

    Returns:
        BerCurve
    """
    grid = [float(value) for value in np.atleast_1d(grid_db)]
    if not grid:
        raise InvalidInputError("Eb/N0 격자가 비어 있습니다")
    if not channels:
        raise InvalidInputError("평가 채널 집합이 비어 있습니다")
    per_channel = frames_per_channel(frames_per_point, len(channels))

    tasks = [(point, index) for point in range(len(grid)) for index in range(len(channels))]

    def run(task: tuple[int, int]) -> FrameErrorCounts:
        point, index = task
        noise_power = n0_from_ebn0_db(simulator.power, simulator.n_s, grid[point])
        rng = derive_rng(seed, STREAM_EVAL_POINT, point, index)
        return simulator.simulate(channels[index], noise_power, per_channel, rng)

    logger.info(
        f"BER 스윕 시작: {simulator.label}, 격자 {len(grid)}점 × 채널 {len(channels)}개, "
        f"채널당 {per_channel} 프레임, workers={workers}"
    )
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(run, tasks))
    else:
        results = [run(task) for task in tasks]

    rows = []
    for point, ebn0_db in enumerate(grid):
        counts = FrameErrorCounts.empty(simulator.n_s)
        for result in results[point * len(channels):(point + 1) * len(channels)]:
            counts = counts + result
        low, high = wilson_interval(counts.bit_errors, counts.bits)
        rows.append(BerRow(
            ebn0_db=ebn0_db,
            snr_db=convert_link(simulator.power, simulator.n_s, ebn0_db, LinkUnit.EBN0_DB, LinkUnit.SNR_DB),
            ber=counts.ber,
            ser=counts.ser,
            frames=counts.frames,
            bit_errors=counts.bit_errors,
            frame_errors=counts.frame_errors,
            ber_low=low,
            ber_high=high,
        ))
        logger.info(f"  Eb/N0={ebn0_db:+.2f} dB: BER={counts.ber:.3e}, SER={counts.ser:.3e}")

    return BerCurve(
        label=simulator.label,
        n_s=simulator.n_s,
        config_hash=config_hash,
        seed=seed,
        channel_set_id=channel_set_id,
        rows=rows,
    )
