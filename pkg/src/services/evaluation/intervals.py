"""src.services.evaluation.intervals
BER 신뢰구간 (Wilson 95%, 오류 0 단측 상한)과 Monte Carlo 허용 범위
"""
import math

from scipy.stats import binom, norm

CONFIDENCE = 0.95


def zero_error_upper_bound(trials: int, confidence: float = CONFIDENCE) -> float:
    """오류 0회 관측 시 단측 상한 u: (1 − u)^n = 1 − confidence"""
    return 1.0 - (1.0 - confidence) ** (1.0 / trials)


def wilson_interval(errors: int, trials: int, confidence: float = CONFIDENCE) -> tuple[float, float]:
    """
    이항 비율의 Wilson 점수 구간

    오류가 0이면 (0, 단측 상한)을 반환합니다.

    Args:
        errors: 오류 수
        trials: 시행 수 (≥ 1)
        confidence: 신뢰수준

    Returns:
        tuple[float, float]: (하한, 상한)
    """
    if trials < 1:
        raise ValueError(f"시행 수는 1 이상이어야 합니다: {trials}")
    if errors == 0:
        return 0.0, zero_error_upper_bound(trials, confidence)

    z = norm.ppf(0.5 + confidence / 2.0)
    p = errors / trials
    denominator = 1.0 + z ** 2 / trials
    center = (p + z ** 2 / (2 * trials)) / denominator
    half = z * math.sqrt(p * (1 - p) / trials + z ** 2 / (4 * trials ** 2)) / denominator
    return max(0.0, center - half), min(1.0, center + half)


def within_sigmas(errors: int, trials: int, expected_rate: float, sigmas: float = 3.0) -> bool:
    """
    관측 오류 수가 기대 BER의 ±sigmas σ 범위 안인지 판정합니다.

    정규 근사 |p̂ − p| ≤ kσ 또는 같은 포함 확률의 정확 이항 구간 중 하나를 만족하면 통과합니다
    (기대 오류 수가 1 미만인 고 SNR 점에서는 정규 근사가 성립하지 않음).
    """
    sigma = math.sqrt(expected_rate * (1 - expected_rate) / trials)
    if abs(errors / trials - expected_rate) <= sigmas * sigma:
        return True
    coverage = 2.0 * norm.cdf(sigmas) - 1.0
    low, high = binom.interval(coverage, trials, expected_rate)
    return low <= errors <= high
