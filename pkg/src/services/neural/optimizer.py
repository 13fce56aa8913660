"""src.services.neural.optimizer
Adam 옵티마이저 (bias correction 포함)
"""
from dataclasses import dataclass, field

import numpy as np

from src.core.exceptions import InvalidInputError


@dataclass
class AdamState:
    """파라미터별 1차/2차 모멘트와 스텝 카운터"""
    m: list[np.ndarray] = field(default_factory=list)
    v: list[np.ndarray] = field(default_factory=list)
    t: int = 0
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8

    @classmethod
    def for_params(cls, params: list[np.ndarray], **hyper) -> "AdamState":
        return cls(
            m=[np.zeros_like(p) for p in params],
            v=[np.zeros_like(p) for p in params],
            **hyper,
        )


def adam_step(params: list[np.ndarray], grads: list[np.ndarray], state: AdamState, lr: float) -> AdamState:
    """
    파라미터 배열을 제자리(in-place)에서 한 스텝 갱신합니다.

    Args:
        params: 학습 파라미터 배열 목록 (고정 레이어 제외)
        grads: params와 같은 순서/형태의 기울기
        state: Adam 상태 (갱신됨)
        lr: 학습률 (> 0)

    Returns:
        AdamState: 갱신된 상태 (입력과 같은 객체)
    """
    if not lr > 0:
        raise InvalidInputError(f"학습률은 양수여야 합니다: {lr}")
    if len(params) != len(grads) or len(params) != len(state.m):
        raise InvalidInputError("파라미터, 기울기, Adam 모멘트 개수가 다릅니다")

    state.t += 1
    correction1 = 1.0 - state.beta1 ** state.t
    correction2 = 1.0 - state.beta2 ** state.t
    for param, grad, m, v in zip(params, grads, state.m, state.v):
        m *= state.beta1
        m += (1.0 - state.beta1) * grad
        v *= state.beta2
        v += (1.0 - state.beta2) * grad ** 2
        param -= lr * (m / correction1) / (np.sqrt(v / correction2) + state.eps)
    return state
