"""src.services.neural.losses
MSE / cross-entropy 손실과 해석적 기울기 (배치 평균)
"""
import numpy as np

from src.core.exceptions import DimensionMismatchError, InvalidInputError
from src.services.neural.activations import softmax


def mse_loss(pred: np.ndarray, target: np.ndarray) -> tuple[float, np.ndarray]:
    """
    전체 원소 평균 제곱 오차

    Returns:
        tuple[float, np.ndarray]: (손실, pred에 대한 기울기)
    """
    if pred.shape != target.shape:
        raise DimensionMismatchError(f"MSE 입력 차원 불일치: {pred.shape} vs {target.shape}")
    diff = pred - target
    return float(np.mean(diff ** 2)), 2.0 * diff / diff.size


def cross_entropy_loss(logits: np.ndarray, one_hot: np.ndarray) -> tuple[float, np.ndarray]:
    """
    −log softmax(logits)[정답] 의 배치 평균

    Args:
        logits: (B, K) 원시 출력
        one_hot: (B, K) 행마다 정확히 하나의 1

    Returns:
        tuple[float, np.ndarray]: (손실, logits에 대한 기울기)
    """
    logits = np.atleast_2d(logits)
    one_hot = np.atleast_2d(one_hot)
    if logits.shape != one_hot.shape:
        raise DimensionMismatchError(f"cross-entropy 입력 차원 불일치: {logits.shape} vs {one_hot.shape}")
    if not (np.all(np.sum(one_hot == 1, axis=-1) == 1) and np.all((one_hot == 0) | (one_hot == 1))):
        raise InvalidInputError("one-hot 정답은 행마다 정확히 하나의 1을 가져야 합니다")

    shifted = logits - np.max(logits, axis=-1, keepdims=True)
    log_probs = shifted - np.log(np.sum(np.exp(shifted), axis=-1, keepdims=True))
    batch = logits.shape[0]
    loss = -float(np.sum(log_probs * one_hot)) / batch
    return loss, (softmax(logits) - one_hot) / batch
