"""src.services.neural.normalization
예제(행)별 송신 전력 정규화 레이어
"""
import numpy as np

EPS_NORM = 1e-12


def _scale(x: np.ndarray, power: float) -> tuple[np.ndarray, np.ndarray]:
    energy = np.sum(x ** 2, axis=-1, keepdims=True)
    return energy, np.sqrt(power / np.maximum(energy, EPS_NORM))


def power_normalize(x: np.ndarray, power: float) -> np.ndarray:
    """
    각 행을 ‖x‖² = P 가 되도록 선형 스케일링합니다 (‖x‖² < EPS_NORM 이면 고정 배율).

    Args:
        x: (B, 2·N_t) 실수 적층 송신 신호
        power: 총 송신 전력 P (W)

    Returns:
        np.ndarray: 정규화된 신호
    """
    _, scale = _scale(x, power)
    return x * scale


def power_normalize_backward(x: np.ndarray, grad_out: np.ndarray, power: float) -> np.ndarray:
    """grad_x = c·(g − x (x·g)/‖x‖²), 보호 구간에서는 c·g"""
    energy, scale = _scale(x, power)
    active = energy >= EPS_NORM
    projection = np.sum(x * grad_out, axis=-1, keepdims=True) / np.maximum(energy, EPS_NORM)
    return scale * np.where(active, grad_out - x * projection, grad_out)
