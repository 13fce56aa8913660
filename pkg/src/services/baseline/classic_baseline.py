"""src.services.baseline.classic_baseline
SVD 프리코딩 + 적응 비트 할당 (BPSK / M-QAM) 기준선

흐름: 비트 분할 후보 열거 → 분할별 전력 비율 격자 탐색(이론 BER 최소) →
x = VΣs 전송 → U^H 후 서브채널별 최소거리 검출
"""
import itertools
import logging
from dataclasses import dataclass

import numpy as np

from src.core.exceptions import InfeasibleAllocationError, InvalidInputError
from src.models.error_counts import FrameErrorCounts
from src.services.baseline.modulation import analytic_ber, gray_demodulate, gray_modulate
from src.services.channel import ChannelRealization, apply_channel

logger = logging.getLogger(__name__)

BIT_OPTIONS = (0, 1, 2, 4, 6)  # 0=off, 1=BPSK, 2=4-QAM, 4=16-QAM, 6=64-QAM
POWER_FRACTIONS = np.linspace(0.0, 1.0, 101)  # 서브채널 1에 주는 전력 비율 격자


@dataclass(frozen=True)
class BitAllocation:
    """서브채널별 비트 수와 전력 비율"""
    bits_per_subchannel: tuple[int, ...]
    power_split: tuple[float, ...]
    predicted_bit_errors: float = 0.0

    def __post_init__(self):
        if any(bits not in BIT_OPTIONS for bits in self.bits_per_subchannel):
            raise InvalidInputError(f"지원하지 않는 비트 수가 포함되어 있습니다: {self.bits_per_subchannel}")
        if len(self.power_split) != len(self.bits_per_subchannel):
            raise InvalidInputError("전력 비율과 비트 할당의 길이가 다릅니다")
        if abs(sum(self.power_split) - 1.0) > 1e-9 or min(self.power_split) < 0:
            raise InvalidInputError(f"전력 비율의 합은 1이어야 합니다: {self.power_split}")

    @property
    def n_s(self) -> int:
        return sum(self.bits_per_subchannel)

    def powers(self, total_power: float) -> np.ndarray:
        """서브채널별 전력 (W)"""
        return total_power * np.asarray(self.power_split)


# =============================================
# 할당 탐색
# =============================================
def candidate_splits(n_s: int, n_subchannels: int = 2) -> list[tuple[int, ...]]:
    """
    합이 N_s인 비트 분할 후보 (강한 서브채널에 비트가 많은 순서)

    Raises:
        InfeasibleAllocationError: 가능한 분할이 없는 N_s
    """
    splits = [
        split for split in itertools.product(BIT_OPTIONS, repeat=n_subchannels)
        if sum(split) == n_s
    ]
    if n_s < 1 or not splits:
        raise InfeasibleAllocationError(f"N_s={n_s} 비트를 {BIT_OPTIONS} 조합으로 나눌 수 없습니다")
    return sorted(splits, reverse=True)


def _subchannel_ebn0(received_power: np.ndarray, bits: int, noise_power: float) -> np.ndarray:
    """서브채널 Eb/N0 = p_i λ_i² / (b_i N0), 수신 전력 0이면 0, N0 = 0이면 inf"""
    received_power = np.asarray(received_power, dtype=float)
    if noise_power <= 0:
        return np.where(received_power > 0, np.inf, 0.0)
    return received_power / (bits * noise_power)


def predicted_bit_errors(
    bits: tuple[int, ...],
    powers: np.ndarray,
    lambda_sq: np.ndarray,
    noise_power: float
) -> np.ndarray:
    """
    프레임당 예상 비트 오류 수 Σ b_i · BER_i

    Args:
        powers: (..., n_subchannels) 서브채널 전력 (격자 전체를 한 번에 평가 가능)
    """
    powers = np.atleast_2d(powers)
    total = np.zeros(powers.shape[0])
    for index, count in enumerate(bits):
        if count == 0:
            continue
        ebn0 = _subchannel_ebn0(powers[:, index] * lambda_sq[index], count, noise_power)
        total = total + count * np.asarray(analytic_ber(2 ** count, ebn0))
    return total


def choose_allocation(
    singular_values: np.ndarray,
    noise_power: float,
    total_power: float,
    n_s: int
) -> BitAllocation:
    """
    예상 비트 오류가 최소인 (비트 분할, 전력 비율) 을 선택합니다.

    동률이면 강한 서브채널(인덱스 0)에 비트를 더 싣는 분할, 같은 분할 안에서는
    격자 앞쪽 비율이 우선합니다.

    Args:
        singular_values: 내림차순 특이값 (서브채널 2개)
        noise_power: N0 (≥ 0)
        total_power: P (> 0)
        n_s: 전송당 비트 수

    Returns:
        BitAllocation
    """
    lambda_sq = np.asarray(singular_values, dtype=float) ** 2
    if lambda_sq.shape != (2,):
        raise InvalidInputError("전력 비율 격자 탐색은 서브채널 2개만 지원합니다")
    if not total_power > 0:
        raise InvalidInputError(f"총 전력 P는 양수여야 합니다: {total_power}")

    best: BitAllocation | None = None
    for split in candidate_splits(n_s, 2):
        fractions = POWER_FRACTIONS
        if split[1] == 0:
            fractions = np.array([1.0])
        elif split[0] == 0:
            fractions = np.array([0.0])

        grid = np.column_stack([fractions, 1.0 - fractions])
        errors = predicted_bit_errors(split, total_power * grid, lambda_sq, noise_power)
        index = int(np.argmin(errors))
        if best is None or errors[index] < best.predicted_bit_errors:
            fraction = float(fractions[index])
            best = BitAllocation(
                bits_per_subchannel=split,
                power_split=(fraction, 1.0 - fraction),
                predicted_bit_errors=float(errors[index]),
            )

    logger.debug(f"비트 할당 선택: bits={best.bits_per_subchannel}, split={best.power_split}")
    return best


# =============================================
# 전송 시뮬레이션
# =============================================
def precode(
    channel: ChannelRealization,
    allocation: BitAllocation,
    total_power: float,
    bits: np.ndarray
) -> np.ndarray:
    """±1 비트 (frames, N_s) → 송신 벡터 x = VΣs (frames, N_t)"""
    symbols = np.zeros((bits.shape[0], channel.factors.V.shape[0]), dtype=complex)
    offset = 0
    for index, count in enumerate(allocation.bits_per_subchannel):
        if count:
            symbols[:, index] = gray_modulate(bits[:, offset:offset + count], 2 ** count)
            offset += count
    return (symbols * np.sqrt(allocation.powers(total_power))) @ channel.factors.V.T


def simulate_allocation(
    channel: ChannelRealization,
    allocation: BitAllocation,
    total_power: float,
    n_frames: int,
    rng: np.random.Generator
) -> FrameErrorCounts:
    """
    x = VΣs → y = Hx + w → ỹ = U^H y → 서브채널별 검출

    평균 전력 Σ E|x_i|² = Σ p_i = P 를 만족합니다 (M > 4 에서는 피크 전력이 P를 넘을 수 있음).

    Args:
        channel: N0가 설정된 채널
        allocation: 비트/전력 할당
        total_power: P
        n_frames: 프레임 수 (≥ 1)
        rng: 난수 생성기

    Returns:
        FrameErrorCounts
    """
    if n_frames < 1:
        raise InvalidInputError(f"n_frames는 1 이상이어야 합니다: {n_frames}")
    if channel.noise_power is None:
        raise InvalidInputError("잡음 전력(N0)이 설정되지 않은 채널입니다")

    n_s = allocation.n_s
    factors = channel.factors
    powers = allocation.powers(total_power)

    bits = 2.0 * rng.integers(0, 2, size=(n_frames, n_s)) - 1.0
    transmitted = precode(channel, allocation, total_power, bits)
    received = apply_channel(channel.H, transmitted, channel.noise_power, rng)
    rotated = received @ factors.U.conj()

    decided = np.empty_like(bits)
    offset = 0
    for index, count in enumerate(allocation.bits_per_subchannel):
        if count:
            gain = max(factors.singular_values[index] * np.sqrt(powers[index]), np.finfo(float).tiny)
            decided[:, offset:offset + count] = gray_demodulate(rotated[:, index], 2 ** count, gain)
            offset += count

    mismatches = decided != bits
    return FrameErrorCounts(
        bit_errors=int(mismatches.sum()),
        frame_errors=int(mismatches.any(axis=1).sum()),
        frames=n_frames,
        bits_per_frame=n_s,
    )


def allocate_and_simulate(
    channel: ChannelRealization,
    n_s: int,
    total_power: float,
    rng: np.random.Generator,
    n_frames: int
) -> tuple[BitAllocation, float]:
    """
    비트 할당을 고른 뒤 n_frames 프레임을 전송하여 측정 BER을 반환합니다.

    Returns:
        tuple[BitAllocation, float]: (선택된 할당, 측정 BER)
    """
    if channel.noise_power is None:
        raise InvalidInputError("잡음 전력(N0)이 설정되지 않은 채널입니다")
    allocation = choose_allocation(channel.singular_values, channel.noise_power, total_power, n_s)
    counts = simulate_allocation(channel, allocation, total_power, n_frames, rng)
    return allocation, counts.ber
