"""src.services.neural.network
잔차(shortcut) 연결을 가진 다층 완전연결 네트워크

은닉층 k의 출력 a_k = act(W_k a_{k−1} + b_k)
shortcut s → k 가 있으면 a_k = act((W_k a_{k−1} + b_k + a_s) / √2)
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from src.core.exceptions import DimensionMismatchError
from src.services.neural.activations import Activation, activation_backward, activation_forward
from src.services.neural.layers import DenseLayer

logger = logging.getLogger(__name__)

# shortcut 합의 2차 모멘트가 층을 지나도 커지지 않도록 맞추는 배율
SKIP_SCALE = 1.0 / math.sqrt(2.0)


def default_skips(hidden_layers: int) -> tuple[tuple[int, int], ...]:
    """두 층씩 건너뛰는 shortcut (은닉층 5개 → 1→3, 3→5, 0-based (0,2), (2,4))"""
    return tuple((k, k + 2) for k in range(0, hidden_layers - 2, 2))


@dataclass
class ForwardCache:
    """backward에 필요한 층별 입력, 활성화 입력(shortcut 합 포함), 출력"""
    inputs: list[np.ndarray]
    pre: list[np.ndarray]
    outputs: list[np.ndarray]


class FeedForwardNet:
    """
    은닉층 + 출력층 구성의 FCNN

    Args:
        layers: DenseLayer 목록 (마지막이 출력층)
        activations: 층별 활성화
        skips: (source, target) 은닉층 인덱스 쌍, 두 층의 폭이 같아야 함
    """

    def __init__(
        self,
        layers: list[DenseLayer],
        activations: list[Activation],
        skips: tuple[tuple[int, int], ...] = ()
    ):
        if len(layers) != len(activations):
            raise DimensionMismatchError("레이어와 활성화 개수가 다릅니다")
        for previous, current in zip(layers, layers[1:]):
            if previous.n_out != current.n_in:
                raise DimensionMismatchError(f"레이어 차원 연결 불일치: {previous.n_out} → {current.n_in}")
        for source, target in skips:
            if not source < target < len(layers) or layers[source].n_out != layers[target].n_out:
                raise DimensionMismatchError(f"shortcut 양 끝의 폭이 다릅니다: {source} → {target}")

        self.layers = layers
        self.activations = activations
        self.skip_sources = {target: source for source, target in skips}

    @classmethod
    def build(
        cls,
        n_in: int,
        n_out: int,
        rng: np.random.Generator,
        hidden_layers: int = 5,
        hidden_width: int = 32,
        output_activation: Activation = Activation.IDENTITY,
        residuals: bool = True
    ) -> "FeedForwardNet":
        """Glorot 초기화된 은닉층(leaky ReLU) + 출력층 네트워크 생성"""
        widths = [n_in] + [hidden_width] * hidden_layers + [n_out]
        layers = [DenseLayer.glorot(a, b, rng) for a, b in zip(widths, widths[1:])]
        activations = [Activation.LEAKY_RELU] * hidden_layers + [output_activation]
        skips = default_skips(hidden_layers) if residuals else ()
        return cls(layers, activations, skips)

    @property
    def n_in(self) -> int:
        return self.layers[0].n_in

    @property
    def n_out(self) -> int:
        return self.layers[-1].n_out

    @property
    def skips(self) -> tuple[tuple[int, int], ...]:
        return tuple((source, target) for target, source in sorted(self.skip_sources.items()))

    def parameters(self) -> list[np.ndarray]:
        """학습 파라미터 배열 (층 순서대로 W, b)"""
        params = []
        for layer in self.layers:
            if layer.trainable:
                params.extend([layer.W, layer.b])
        return params

    def forward(self, x: np.ndarray) -> tuple[np.ndarray, ForwardCache]:
        cache = ForwardCache(inputs=[], pre=[], outputs=[])
        h = x
        for index, (layer, kind) in enumerate(zip(self.layers, self.activations)):
            cache.inputs.append(h)
            pre = layer.forward(h)
            if index in self.skip_sources:
                pre = SKIP_SCALE * (pre + cache.outputs[self.skip_sources[index]])
            out = activation_forward(kind, pre)
            cache.pre.append(pre)
            cache.outputs.append(out)
            h = out
        return h, cache

    def backward(self, cache: ForwardCache, grad_out: np.ndarray) -> tuple[np.ndarray, list[np.ndarray]]:
        """
        Args:
            cache: forward 캐시
            grad_out: 네트워크 출력 기울기

        Returns:
            tuple: (입력 기울기, parameters() 순서의 기울기 목록)
        """
        pending: list[np.ndarray | None] = [None] * len(self.layers)
        pending[-1] = grad_out
        layer_grads: list[tuple[np.ndarray, np.ndarray] | None] = [None] * len(self.layers)
        grad_x = grad_out

        for index in reversed(range(len(self.layers))):
            grad_pre = activation_backward(
                self.activations[index], cache.pre[index], cache.outputs[index], pending[index]
            )
            if index in self.skip_sources:
                # 덧셈 노드: 배율을 곱한 기울기가 양쪽 가지로 전달
                grad_pre = SKIP_SCALE * grad_pre
                source = self.skip_sources[index]
                pending[source] = grad_pre if pending[source] is None else pending[source] + grad_pre
            layer = self.layers[index]
            grad_x, grad_W, grad_b = layer.backward(cache.inputs[index], grad_pre)
            if layer.trainable:
                layer_grads[index] = (grad_W, grad_b)
            if index > 0:
                pending[index - 1] = grad_x if pending[index - 1] is None else pending[index - 1] + grad_x

        grads = []
        for entry in layer_grads:
            if entry is not None:
                grads.extend(entry)
        return grad_x, grads

    def activation_signature(self, cache: ForwardCache) -> bytes:
        """leaky ReLU pre-activation 부호 패턴 (유한차분 검사에서 꺾임 통과 판별용)"""
        signs = [
            np.packbits(pre > 0).tobytes()
            for pre, kind in zip(cache.pre, self.activations)
            if kind == Activation.LEAKY_RELU
        ]
        return b"".join(signs)
