"""src.services.neural
numpy 기반 소형 학습 엔진 (dense / 활성화 / 잔차 / 전력 정규화 / 손실 / Adam / 기울기 검증)
"""
from src.services.neural.activations import Activation, activation_backward, activation_forward, softmax
from src.services.neural.layers import DenseLayer
from src.services.neural.losses import cross_entropy_loss, mse_loss
from src.services.neural.normalization import EPS_NORM, power_normalize, power_normalize_backward
from src.services.neural.optimizer import AdamState, adam_step
from src.services.neural.network import SKIP_SCALE, FeedForwardNet, ForwardCache, default_skips
from src.services.neural.grad_check import GradCheckResult, grad_check, relative_error

__all__ = [
    "Activation",
    "activation_backward",
    "activation_forward",
    "softmax",
    "DenseLayer",
    "cross_entropy_loss",
    "mse_loss",
    "EPS_NORM",
    "power_normalize",
    "power_normalize_backward",
    "AdamState",
    "adam_step",
    "FeedForwardNet",
    "ForwardCache",
    "SKIP_SCALE",
    "default_skips",
    "GradCheckResult",
    "grad_check",
    "relative_error",
]
