"""src.services.baseline.water_filling
병렬 서브채널 water-filling 전력 할당

p_i = max(0, μ − N0/λ_i²),  Σ p_i = P
"""
import logging
from dataclasses import dataclass

import numpy as np

from src.core.exceptions import InfeasibleAllocationError, InvalidInputError

logger = logging.getLogger(__name__)

BISECTION_MAX_ITER = 200


@dataclass(frozen=True)
class PowerAllocation:
    """서브채널별 전력 (W) 과 수위 μ"""
    powers: np.ndarray
    water_level: float

    @property
    def sigma(self) -> np.ndarray:
        """전력 할당 행렬 Σ의 대각 원소 √p_i"""
        return np.sqrt(self.powers)


def _noise_to_gain(lambda_sq: np.ndarray, noise_power: float, power: float) -> tuple[np.ndarray, np.ndarray]:
    """입력 검증 후 (활성 마스크, N0/λ², 비활성은 inf)"""
    lambda_sq = np.asarray(lambda_sq, dtype=float)
    if not np.all(np.isfinite(lambda_sq)) or np.any(lambda_sq < 0):
        raise InvalidInputError("λ²는 0 이상의 유한값이어야 합니다")
    if not power > 0:
        raise InvalidInputError(f"총 전력 P는 양수여야 합니다: {power}")
    if not noise_power > 0:
        raise InvalidInputError(f"잡음 전력 N0는 양수여야 합니다: {noise_power}")

    active = lambda_sq > 0
    if not np.any(active):
        raise InfeasibleAllocationError("모든 서브채널 이득이 0이라 전력을 할당할 수 없습니다")

    floor = np.full(lambda_sq.shape, np.inf)
    floor[active] = noise_power / lambda_sq[active]
    return active, floor


def waterfill(lambda_sq: np.ndarray, noise_power: float, power: float) -> PowerAllocation:
    """
    활성 집합(active-set) 방식 water-filling

    바닥(N0/λ²)이 낮은 순으로 k개를 활성화했을 때 μ = (P + Σ바닥)/k 가 k번째 바닥보다
    높은 최대 k를 선택합니다.

    Args:
        lambda_sq: 서브채널 이득 λ_i² (≥ 0)
        noise_power: N0 (> 0)
        power: 총 전력 P (> 0)

    Returns:
        PowerAllocation: Σp = P, p_i > 0 ⇒ μ = p_i + N0/λ_i²

    Raises:
        InfeasibleAllocationError: 모든 λ² = 0
    """
    active, floor = _noise_to_gain(lambda_sq, noise_power, power)
    ordered = np.sort(floor[active])

    water_level = ordered[0] + power
    for count in range(len(ordered), 0, -1):
        candidate = (power + ordered[:count].sum()) / count
        if candidate > ordered[count - 1]:
            water_level = candidate
            break

    powers = np.where(active, np.maximum(0.0, water_level - floor), 0.0)
    return PowerAllocation(powers=powers, water_level=float(water_level))


def waterfill_bisection(
    lambda_sq: np.ndarray,
    noise_power: float,
    power: float,
    tol: float = 1e-13
) -> PowerAllocation:
    """
    수위 μ에 대한 이분법 water-filling (active-set 결과 검증용 오라클)

    Args:
        tol: μ 구간 폭 허용 오차 (P에 대한 상대값)
    """
    active, floor = _noise_to_gain(lambda_sq, noise_power, power)
    lower = float(floor[active].min())
    upper = lower + power

    for _ in range(BISECTION_MAX_ITER):
        middle = 0.5 * (lower + upper)
        allocated = np.maximum(0.0, middle - floor[active]).sum()
        if allocated > power:
            upper = middle
        else:
            lower = middle
        if upper - lower <= tol * power:
            break

    water_level = 0.5 * (lower + upper)
    powers = np.where(active, np.maximum(0.0, water_level - floor), 0.0)
    return PowerAllocation(powers=powers, water_level=float(water_level))
