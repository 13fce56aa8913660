"""src.services.dae.architecture
송신 DAE → 전력 정규화 → 고정 송신 체인 → AWGN → 고정 수신 체인 → 수신 DAE 로 이어지는
end-to-end 미분 가능 링크

복소 신호는 네트워크 내부에서 (Re; Im) 으로 적층된 2·N 실수로 다룹니다.
채널별 고정 레이어는 configure()가 돌려주는 ConfiguredLink에 담기므로, 학습 파라미터는
여러 작업자가 읽기 전용으로 공유할 수 있습니다.
"""
import logging
from dataclasses import dataclass

import numpy as np

from src.core.exceptions import DimensionMismatchError, InvalidInputError, UnconfiguredModelError
from src.models.dae_config import DaeConfig, InputMode
from src.services.channel import ChannelRealization, sample_noise
from src.services.dae.encoding import EncodedInput, channel_feature, decide_bits, encode_input
from src.services.dae.frozen_layers import FrozenChain, configure_frozen
from src.services.linalg import complex_to_real_vector, real_to_complex_vector
from src.services.neural import (
    Activation,
    AdamState,
    FeedForwardNet,
    ForwardCache,
    cross_entropy_loss,
    mse_loss,
    power_normalize,
    power_normalize_backward,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConfiguredLink:
    """채널 하나에 대해 설정된 고정 레이어, CSI 특징, 잡음 전력"""
    frozen: FrozenChain
    csi: np.ndarray
    noise_power: float


@dataclass
class DaeForward:
    """forward 중간값 (backward와 진단용)"""
    encoded: EncodedInput
    tx_cache: ForwardCache
    tx_out: np.ndarray
    allocated: np.ndarray
    transmitted: np.ndarray  # 정규화 + 프리코딩 후 실수 적층 송신 신호
    received: np.ndarray
    receive_inputs: list[np.ndarray]
    rx_cache: ForwardCache
    raw: np.ndarray


class DaeModel:
    """
    SVD 임베딩 심층 오토인코더 (plain / svd / svd-wf)

    Args:
        config: DAE 구조 설정
        rng: 가중치 초기화용 난수 생성기
    """

    def __init__(self, config: DaeConfig, rng: np.random.Generator):
        self.config = config
        rx_activation = Activation.TANH if config.input_mode == InputMode.BIT else Activation.IDENTITY
        self.tx_net = FeedForwardNet.build(
            config.tx_input_width,
            2 * config.n_t,
            rng,
            hidden_layers=config.hidden_layers,
            hidden_width=config.hidden_width,
            output_activation=Activation.IDENTITY,
            residuals=config.residuals,
        )
        self.rx_net = FeedForwardNet.build(
            config.rx_input_width,
            config.output_width,
            rng,
            hidden_layers=config.hidden_layers,
            hidden_width=config.hidden_width,
            output_activation=rx_activation,
            residuals=config.residuals,
        )
        self.adam = AdamState.for_params(self.parameters())

    # =============================================
    # 파라미터
    # =============================================
    def parameters(self) -> list[np.ndarray]:
        """학습 파라미터 (송신 DAE → 수신 DAE 순서, 고정 레이어 제외)"""
        return self.tx_net.parameters() + self.rx_net.parameters()

    def load_parameters(self, arrays: list[np.ndarray]) -> None:
        """저장된 배열을 제자리에 복사"""
        params = self.parameters()
        if len(arrays) != len(params):
            raise DimensionMismatchError(f"파라미터 개수 불일치: 기대 {len(params)}, 입력 {len(arrays)}")
        for param, array in zip(params, arrays):
            if param.shape != array.shape:
                raise DimensionMismatchError(f"파라미터 형태 불일치: {param.shape} vs {array.shape}")
            np.copyto(param, array)

    @property
    def is_trained(self) -> bool:
        return self.adam.t > 0

    # =============================================
    # 채널 설정
    # =============================================
    def configure(self, channel: ChannelRealization) -> ConfiguredLink:
        """
        채널 실현값에 맞춰 고정 레이어와 CSI 특징을 설정합니다.

        Raises:
            InvalidInputError: N0가 설정되지 않은 채널
        """
        if channel.noise_power is None:
            raise InvalidInputError("잡음 전력(N0)이 설정되지 않은 채널입니다")
        return ConfiguredLink(
            frozen=configure_frozen(channel, self.config.variant, self.config.power),
            csi=channel_feature(channel, self.config.variant),
            noise_power=channel.noise_power,
        )

    def draw_noise(self, rng: np.random.Generator, batch: int, noise_power: float) -> np.ndarray:
        """(B, 2·N_r) 실수 적층 AWGN"""
        return complex_to_real_vector(sample_noise(rng, (batch, self.config.n_r), noise_power))

    # =============================================
    # forward / backward
    # =============================================
    def forward(self, link: ConfiguredLink | None, bits: np.ndarray, noise: np.ndarray) -> DaeForward:
        """
        Args:
            link: configure()로 설정된 링크
            bits: (B, N_s) ±1 비트
            noise: (B, 2·N_r) 실수 적층 잡음

        Raises:
            UnconfiguredModelError: 고정 레이어가 설정되지 않은 경우
        """
        if link is None:
            raise UnconfiguredModelError("채널에 맞게 고정 레이어를 설정한 뒤 forward를 호출해야 합니다")
        frozen = link.frozen
        encoded = encode_input(bits, self.config.input_mode, link.csi)
        if noise.shape != (encoded.payload.shape[0], 2 * self.config.n_r):
            raise DimensionMismatchError(f"잡음 배열 형태 불일치: {noise.shape}")

        tx_out, tx_cache = self.tx_net.forward(encoded.stacked())
        allocated = frozen.allocation.forward(tx_out) if frozen.allocation is not None else tx_out
        transmitted = frozen.precode.forward(power_normalize(allocated, self.config.power))
        received = frozen.channel.forward(transmitted) + noise

        receive_inputs = []
        signal = received
        for layer in frozen.receive:
            receive_inputs.append(signal)
            signal = layer.forward(signal)
        rx_in = np.concatenate([signal, np.broadcast_to(link.csi, (signal.shape[0], link.csi.size))], axis=1)
        raw, rx_cache = self.rx_net.forward(rx_in)

        return DaeForward(
            encoded=encoded,
            tx_cache=tx_cache,
            tx_out=tx_out,
            allocated=allocated,
            transmitted=transmitted,
            received=received,
            receive_inputs=receive_inputs,
            rx_cache=rx_cache,
            raw=raw,
        )

    def _loss(self, result: DaeForward) -> tuple[float, np.ndarray]:
        if self.config.input_mode == InputMode.BIT:
            return mse_loss(result.raw, result.encoded.payload)
        return cross_entropy_loss(result.raw, result.encoded.payload)

    def loss(self, link: ConfiguredLink, bits: np.ndarray, noise: np.ndarray) -> float:
        return self._loss(self.forward(link, bits, noise))[0]

    def loss_and_grads(
        self,
        link: ConfiguredLink,
        bits: np.ndarray,
        noise: np.ndarray
    ) -> tuple[float, list[np.ndarray]]:
        """
        배치 손실과 parameters() 순서의 기울기

        Returns:
            tuple[float, list[np.ndarray]]: (손실, 기울기 목록)
        """
        result = self.forward(link, bits, noise)
        loss, grad_raw = self._loss(result)
        frozen = link.frozen

        grad_rx_in, rx_grads = self.rx_net.backward(result.rx_cache, grad_raw)
        grad = grad_rx_in[:, :2 * self.config.n_t]
        for layer, layer_input in zip(reversed(frozen.receive), reversed(result.receive_inputs)):
            grad = layer.backward(layer_input, grad)[0]
        grad = frozen.channel.backward(result.transmitted, grad)[0]
        normalized = power_normalize(result.allocated, self.config.power)
        grad = frozen.precode.backward(normalized, grad)[0]
        grad = power_normalize_backward(result.allocated, grad, self.config.power)
        if frozen.allocation is not None:
            grad = frozen.allocation.backward(result.tx_out, grad)[0]
        _, tx_grads = self.tx_net.backward(result.tx_cache, grad)

        return loss, tx_grads + rx_grads

    # =============================================
    # 추론 보조
    # =============================================
    def transmit(self, link: ConfiguredLink, bits: np.ndarray) -> np.ndarray:
        """(B, N_t) 복소 송신 벡터 (잡음과 무관)"""
        batch = np.atleast_2d(bits).shape[0]
        noise = np.zeros((batch, 2 * self.config.n_r))
        return real_to_complex_vector(self.forward(link, bits, noise).transmitted)

    def decide(self, raw: np.ndarray) -> np.ndarray:
        return decide_bits(raw, self.config.input_mode, self.config.n_s)

    def activation_signature(self, link: ConfiguredLink, bits: np.ndarray, noise: np.ndarray) -> bytes:
        """송/수신 DAE leaky ReLU 부호 패턴"""
        result = self.forward(link, bits, noise)
        return self.tx_net.activation_signature(result.tx_cache) + self.rx_net.activation_signature(result.rx_cache)
