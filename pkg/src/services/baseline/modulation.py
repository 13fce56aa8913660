"""src.services.baseline.modulation
Gray 라벨링 BPSK / 정방형 M-QAM 변조·복조와 AWGN BER 이론식

성상도는 평균 에너지 1로 정규화되며, M-QAM은 앞쪽 절반 비트가 I축, 뒤쪽 절반이 Q축을 담당합니다.
"""
import logging
import math

import numpy as np
from scipy.special import erfc

from src.core.exceptions import InvalidInputError
from src.models.error_counts import FrameErrorCounts
from src.utils.gray_code import bits_to_codeword, codeword_to_bits, gray_decode, gray_encode

logger = logging.getLogger(__name__)

SUPPORTED_ORDERS = (2, 4, 16, 64)


# =============================================
# 공통
# =============================================
def bits_per_symbol(order: int) -> int:
    """
    변조 차수 M의 심볼당 비트 수

    Raises:
        InvalidInputError: 지원하지 않는 M
    """
    if order not in SUPPORTED_ORDERS:
        raise InvalidInputError(f"지원하지 않는 변조 차수입니다: M={order} (지원: {SUPPORTED_ORDERS})")
    return int(math.log2(order))


def _axis_levels(order: int) -> tuple[int, float]:
    """(축당 PAM 레벨 수 L, 평균 에너지 1 정규화 계수)"""
    levels = int(math.isqrt(order))
    return levels, math.sqrt(2.0 * (order - 1) / 3.0)


def qfunc(x: np.ndarray | float) -> np.ndarray:
    """Q(x) = erfc(x / √2) / 2"""
    return 0.5 * erfc(np.asarray(x, dtype=float) / math.sqrt(2.0))


def constellation(order: int) -> tuple[np.ndarray, np.ndarray]:
    """
    전체 성상도와 각 점의 비트 라벨

    Returns:
        tuple: (심볼 (M,), ±1 비트 (M, log2 M)), 라벨은 코드워드 0..M−1 순서
    """
    k = bits_per_symbol(order)
    labels = codeword_to_bits(np.arange(order), k)
    return gray_modulate(labels, order), labels


# =============================================
# 변조 / 복조
# =============================================
def gray_modulate(bits: np.ndarray, order: int) -> np.ndarray:
    """
    ±1 비트를 Gray 라벨 성상점으로 변환

    Args:
        bits: (..., log2 M) ±1 비트
        order: M ∈ {2, 4, 16, 64}

    Returns:
        np.ndarray: (...) 복소 심볼 (평균 에너지 1)

    Raises:
        InvalidInputError: 비트 수가 log2 M과 다른 경우
    """
    k = bits_per_symbol(order)
    bits = np.asarray(bits, dtype=float)
    if bits.shape[-1] != k:
        raise InvalidInputError(f"M={order} 변조에는 {k}비트가 필요합니다: 입력 {bits.shape[-1]}비트")

    if order == 2:
        return np.where(bits[..., 0] > 0, 1.0, -1.0).astype(complex)

    levels, scale = _axis_levels(order)
    half = k // 2
    i_index = gray_decode(bits_to_codeword(bits[..., :half]))
    q_index = gray_decode(bits_to_codeword(bits[..., half:]))
    return ((2 * i_index - (levels - 1)) + 1j * (2 * q_index - (levels - 1))) / scale


def _slice_axis(component: np.ndarray, levels: int) -> np.ndarray:
    """PAM 최소거리 결정 (중간점 동률은 위쪽 레벨)"""
    index = np.floor((component + (levels - 1)) / 2.0 + 0.5)
    return np.clip(index, 0, levels - 1).astype(np.int64)


def gray_demodulate(y: np.ndarray, order: int, gain: np.ndarray | float) -> np.ndarray:
    """
    |y − gain·c| 를 최소화하는 성상점의 비트를 반환합니다.

    Args:
        y: (...) 수신 복소 샘플
        order: M ∈ {2, 4, 16, 64}
        gain: 양의 실수 채널 이득 (스칼라 또는 y와 브로드캐스트 가능한 배열)

    Returns:
        np.ndarray: (..., log2 M) ±1 비트 (BPSK에서 y=0 이면 +1)
    """
    k = bits_per_symbol(order)
    gain = np.asarray(gain, dtype=float)
    if np.any(gain <= 0):
        raise InvalidInputError("복조 이득은 양수여야 합니다")
    normalized = np.asarray(y, dtype=complex) / gain

    if order == 2:
        return np.where(normalized.real >= 0, 1.0, -1.0)[..., None]

    levels, scale = _axis_levels(order)
    half = k // 2
    scaled = normalized * scale
    i_bits = codeword_to_bits(gray_encode(_slice_axis(scaled.real, levels)), half)
    q_bits = codeword_to_bits(gray_encode(_slice_axis(scaled.imag, levels)), half)
    return np.concatenate([i_bits, q_bits], axis=-1)


# =============================================
# 이론 BER
# =============================================
def _exact_square_qam_ber(order: int, ebn0: np.ndarray) -> np.ndarray:
    """Gray 정방형 M-QAM 정확 BER (축별 Gray PAM 비트 위치 합)"""
    k = bits_per_symbol(order)
    levels = int(math.isqrt(order))
    axis_bits = int(math.log2(levels))
    base = np.sqrt(3.0 * k * ebn0 / (order - 1))

    total = np.zeros_like(ebn0, dtype=float)
    for position in range(1, axis_bits + 1):
        span = 2 ** (position - 1)
        upper = int((1 - 2.0 ** (-position)) * levels)
        for i in range(upper):
            sign = (-1) ** ((i * span) // levels)
            weight = span - math.floor(i * span / levels + 0.5)
            total = total + sign * weight * 2.0 * qfunc((2 * i + 1) * base)
    return total / (levels * axis_bits)


def analytic_ber(order: int, ebn0: np.ndarray | float, exact: bool = False) -> np.ndarray | float:
    """
    AWGN Gray 부호 BER 근사식

    - BPSK / 4-QAM: Q(√(2·Eb/N0))
    - 정방형 M-QAM: (4/log2 M)(1 − 1/√M)·Q(√(3·log2 M·Eb/N0/(M − 1))) (최근접 이웃 근사)

    Args:
        order: M ∈ {2, 4, 16, 64}
        ebn0: 선형 Eb/N0 (≥ 0, inf 허용)
        exact: True면 축별 Gray PAM 정확식 사용 (16/64-QAM 저 SNR 오라클용)

    Returns:
        BER (입력이 스칼라면 float)

    Raises:
        InvalidInputError: 지원하지 않는 M 또는 음수 Eb/N0
    """
    k = bits_per_symbol(order)
    values = np.asarray(ebn0, dtype=float)
    if np.any(values < 0) or np.any(np.isnan(values)):
        raise InvalidInputError("Eb/N0는 0 이상이어야 합니다")

    if order in (2, 4):
        ber = qfunc(np.sqrt(2.0 * values))
    elif exact:
        ber = _exact_square_qam_ber(order, values)
    else:
        root = math.sqrt(order)
        ber = (4.0 / k) * (1.0 - 1.0 / root) * qfunc(np.sqrt(3.0 * k * values / (order - 1)))

    return float(ber) if np.ndim(ber) == 0 else ber


# =============================================
# 단일 서브채널 Monte Carlo
# =============================================
def simulate_awgn_ber(
    order: int,
    ebn0: float,
    n_bits: int,
    rng: np.random.Generator
) -> FrameErrorCounts:
    """
    단위 이득 AWGN 채널에서 Gray 변조 BER을 측정합니다 (심볼 에너지 1, N0 = 1/(k·Eb/N0)).

    Args:
        order: M
        ebn0: 선형 Eb/N0 (> 0)
        n_bits: 최소 전송 비트 수 (심볼 단위로 올림)
        rng: 난수 생성기

    Returns:
        FrameErrorCounts: 프레임 = 심볼 하나
    """
    k = bits_per_symbol(order)
    if not ebn0 > 0:
        raise InvalidInputError(f"Eb/N0는 양수여야 합니다: {ebn0}")
    n_symbols = -(-n_bits // k)
    noise_power = 1.0 / (k * ebn0)

    bits = 2.0 * rng.integers(0, 2, size=(n_symbols, k)) - 1.0
    symbols = gray_modulate(bits, order)
    noise = np.sqrt(noise_power / 2.0) * (
        rng.standard_normal(n_symbols) + 1j * rng.standard_normal(n_symbols)
    )
    decided = gray_demodulate(symbols + noise, order, 1.0)

    mismatches = decided != bits
    return FrameErrorCounts(
        bit_errors=int(mismatches.sum()),
        frame_errors=int(mismatches.any(axis=-1).sum()),
        frames=n_symbols,
        bits_per_frame=k,
    )
