"""src.services.dae.frozen_layers
채널 값으로 설정되는 고정(학습 불가) 레이어 구성

| 변형   | 전력 할당      | 송신 프리코딩 | 채널      | 수신 전처리            |
|--------|----------------|---------------|-----------|------------------------|
| plain  | 없음           | I             | embed(H)  | I, I                   |
| svd    | 없음           | embed(V)      | embed(H)  | embed(U^H), embed(Λ⁺)  |
| svd-wf | embed(diag √p) | embed(V)      | embed(H)  | embed(U^H), embed(Λ⁺)  |

모든 편향은 0 입니다.
"""
import logging
from dataclasses import dataclass

import numpy as np

from src.core.exceptions import InvalidInputError
from src.models.dae_config import DaeVariant
from src.services.baseline import waterfill
from src.services.channel import ChannelRealization
from src.services.linalg import complex_to_real_block, pinv_diag
from src.services.neural import DenseLayer

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FrozenChain:
    """송신 DAE 출력과 수신 DAE 입력 사이의 고정 레이어 묶음"""
    allocation: DenseLayer | None  # 전력 정규화 앞 (svd-wf)
    precode: DenseLayer  # 전력 정규화 뒤
    channel: DenseLayer
    receive: tuple[DenseLayer, ...]

    def layers(self) -> list[DenseLayer]:
        head = [self.allocation] if self.allocation is not None else []
        return head + [self.precode, self.channel, *self.receive]

    def composite(self) -> np.ndarray:
        """잡음이 없을 때 프리코딩 입력 → 수신 DAE 입력 선형 사상 (할당 레이어 제외)"""
        matrix = self.precode.W
        for layer in [self.channel, *self.receive]:
            matrix = layer.W @ matrix
        return matrix


def waterfill_powers(channel: ChannelRealization, power: float) -> np.ndarray:
    """svd-wf 할당 전력 (N0 = 0 이면 균등 분할)"""
    lambda_sq = channel.singular_values ** 2
    if channel.noise_power == 0:
        return np.full(lambda_sq.size, power / lambda_sq.size)
    return waterfill(lambda_sq, channel.noise_power, power).powers


def configure_frozen(channel: ChannelRealization, variant: DaeVariant, power: float = 20.0) -> FrozenChain:
    """
    채널 실현값에 맞춘 고정 레이어 설정

    Args:
        channel: SVD 인자를 가진 채널 (svd-wf는 N0 필요)
        variant: plain / svd / svd-wf
        power: 총 송신 전력 P (svd-wf 할당용)

    Returns:
        FrozenChain
    """
    variant = DaeVariant(variant)
    n_r, n_t = channel.H.shape
    factors = channel.factors
    channel_layer = DenseLayer.frozen(complex_to_real_block(channel.H))

    if variant == DaeVariant.PLAIN:
        return FrozenChain(
            allocation=None,
            precode=DenseLayer.frozen(np.eye(2 * n_t)),
            channel=channel_layer,
            receive=(DenseLayer.frozen(np.eye(2 * n_r)), DenseLayer.frozen(np.eye(2 * n_r))),
        )

    allocation = None
    if variant == DaeVariant.SVD_WF:
        if channel.noise_power is None:
            raise InvalidInputError("svd-wf 변형은 잡음 전력(N0)이 설정된 채널이 필요합니다")
        allocation = DenseLayer.frozen(complex_to_real_block(np.diag(np.sqrt(waterfill_powers(channel, power)))))

    pinv_sigma = np.zeros((n_t, n_r))
    np.fill_diagonal(pinv_sigma, pinv_diag(factors.singular_values))
    return FrozenChain(
        allocation=allocation,
        precode=DenseLayer.frozen(complex_to_real_block(factors.V)),
        channel=channel_layer,
        receive=(
            DenseLayer.frozen(complex_to_real_block(factors.U.conj().T)),
            DenseLayer.frozen(complex_to_real_block(pinv_sigma)),
        ),
    )
