"""src.services.neural.layers
완전연결(dense) 레이어

배치 우선 규약: 입력 x는 (B, in), 가중치 W는 (out, in), forward = x Wᵀ + b
"""
from dataclasses import dataclass

import numpy as np

from src.core.exceptions import DimensionMismatchError


@dataclass
class DenseLayer:
    """학습 가능 또는 고정(frozen) 완전연결 레이어"""
    W: np.ndarray
    b: np.ndarray
    trainable: bool = True

    @classmethod
    def glorot(cls, n_in: int, n_out: int, rng: np.random.Generator) -> "DenseLayer":
        """±sqrt(6 / (fan_in + fan_out)) 균등분포 초기화, 편향 0"""
        limit = np.sqrt(6.0 / (n_in + n_out))
        return cls(W=rng.uniform(-limit, limit, size=(n_out, n_in)), b=np.zeros(n_out))

    @classmethod
    def frozen(cls, W: np.ndarray) -> "DenseLayer":
        """채널 값으로 설정되는 고정 레이어 (편향 0)"""
        W = np.array(W, dtype=float)
        W.setflags(write=False)
        b = np.zeros(W.shape[0])
        b.setflags(write=False)
        return cls(W=W, b=b, trainable=False)

    @property
    def n_in(self) -> int:
        return self.W.shape[1]

    @property
    def n_out(self) -> int:
        return self.W.shape[0]

    def forward(self, x: np.ndarray) -> np.ndarray:
        if x.shape[-1] != self.n_in:
            raise DimensionMismatchError(f"레이어 입력 차원 불일치: 기대 {self.n_in}, 입력 {x.shape[-1]}")
        return x @ self.W.T + self.b

    def backward(
        self,
        x: np.ndarray,
        grad_out: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray | None, np.ndarray | None]:
        """
        Args:
            x: forward 입력 (B, in)
            grad_out: 출력 기울기 (B, out)

        Returns:
            tuple: (grad_x, grad_W, grad_b), 고정 레이어는 파라미터 기울기 None
        """
        if grad_out.shape[-1] != self.n_out:
            raise DimensionMismatchError(f"레이어 출력 기울기 차원 불일치: 기대 {self.n_out}, 입력 {grad_out.shape[-1]}")
        grad_x = grad_out @ self.W
        if not self.trainable:
            return grad_x, None, None
        x2 = x.reshape(-1, self.n_in)
        g2 = grad_out.reshape(-1, self.n_out)
        return grad_x, g2.T @ x2, g2.sum(axis=0)
