"""src.services.neural.activations
활성화 함수 forward / backward
"""
from enum import Enum

import numpy as np

LEAKY_SLOPE = 0.01


class Activation(str, Enum):
    """활성화 함수 종류"""
    LEAKY_RELU = "leaky_relu"
    TANH = "tanh"
    IDENTITY = "identity"
    SOFTMAX = "softmax"


def softmax(x: np.ndarray) -> np.ndarray:
    """마지막 축 기준 softmax (최댓값 이동으로 overflow 방지)"""
    shifted = x - np.max(x, axis=-1, keepdims=True)
    exp = np.exp(shifted)
    return exp / np.sum(exp, axis=-1, keepdims=True)


def activation_forward(kind: Activation, x: np.ndarray) -> np.ndarray:
    if kind == Activation.LEAKY_RELU:
        return np.where(x > 0, x, LEAKY_SLOPE * x)
    if kind == Activation.TANH:
        return np.tanh(x)
    if kind == Activation.SOFTMAX:
        return softmax(x)
    return x


def activation_backward(kind: Activation, x: np.ndarray, y: np.ndarray, grad_out: np.ndarray) -> np.ndarray:
    """
    활성화 입력에 대한 기울기

    Args:
        kind: 활성화 종류
        x: forward 입력 (pre-activation)
        y: forward 출력
        grad_out: 출력에 대한 기울기

    Returns:
        np.ndarray: 입력에 대한 기울기
    """
    if kind == Activation.LEAKY_RELU:
        return np.where(x > 0, grad_out, LEAKY_SLOPE * grad_out)
    if kind == Activation.TANH:
        return grad_out * (1.0 - y ** 2)
    if kind == Activation.SOFTMAX:
        # 야코비안 diag(y) − y yᵀ 를 행별로 적용
        return y * (grad_out - np.sum(grad_out * y, axis=-1, keepdims=True))
    return grad_out
