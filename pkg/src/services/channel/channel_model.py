"""src.services.channel.channel_model
Rayleigh 평탄 페이딩 채널 생성과 AWGN 주입

잡음 전력 N0는 복소 수신 샘플당 총 분산이며 실수부/허수부에 N0/2씩 나뉩니다.
난수는 호출자가 소유한 np.random.Generator만 사용합니다.
"""
import logging
from dataclasses import dataclass, replace

import numpy as np

from src.core.exceptions import DimensionMismatchError, InvalidInputError
from src.services.linalg import SvdFactors, svd

logger = logging.getLogger(__name__)

DEFAULT_ANTENNAS = 2


@dataclass(frozen=True)
class ChannelRealization:
    """채널 한 번의 실현값과 SVD 인자, 잡음 전력"""
    H: np.ndarray  # (N_r, N_t) 복소
    factors: SvdFactors
    noise_power: float | None = None  # N0 (W), None이면 아직 설정되지 않음

    @classmethod
    def from_matrix(cls, H: np.ndarray, noise_power: float | None = None) -> "ChannelRealization":
        """주어진 채널 행렬로 실현값 생성 (SVD 계산 포함)"""
        H = np.asarray(H, dtype=complex)
        return cls(H=H, factors=svd(H), noise_power=noise_power)

    @property
    def singular_values(self) -> np.ndarray:
        return self.factors.singular_values

    @property
    def gamma(self) -> np.ndarray:
        """
        서브채널별 채널 이득 대 잡음비 γ_i = λ_i² / N0

        N0 = 0(무잡음)이면 λ_i > 0 인 서브채널은 inf, λ_i = 0 이면 0 입니다.

        Raises:
            InvalidInputError: 잡음 전력이 설정되지 않은 경우
        """
        if self.noise_power is None:
            raise InvalidInputError("잡음 전력(N0)이 설정되지 않은 채널입니다")
        lambda_sq = self.singular_values ** 2
        if self.noise_power > 0:
            return lambda_sq / self.noise_power
        return np.where(lambda_sq > 0, np.inf, 0.0)

    def with_noise(self, noise_power: float) -> "ChannelRealization":
        """N0가 설정된 복사본"""
        if not np.isfinite(noise_power) or noise_power < 0:
            raise InvalidInputError(f"잡음 전력은 0 이상의 유한값이어야 합니다: {noise_power}")
        return replace(self, noise_power=float(noise_power))


# =============================================
# 샘플링
# =============================================
def _complex_gaussian(rng: np.random.Generator, shape: tuple[int, ...], variance: float) -> np.ndarray:
    """CN(0, variance): 실수부/허수부 각각 N(0, variance/2)"""
    scale = np.sqrt(variance / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def sample_channel(
    rng: np.random.Generator,
    n_r: int = DEFAULT_ANTENNAS,
    n_t: int = DEFAULT_ANTENNAS
) -> ChannelRealization:
    """
    원소가 i.i.d. CN(0,1) 인 Rayleigh 채널을 하나 생성합니다 (N0 미설정).

    Args:
        rng: 시드가 지정된 난수 생성기
        n_r: 수신 안테나 수
        n_t: 송신 안테나 수

    Returns:
        ChannelRealization: 채널과 SVD 인자
    """
    H = _complex_gaussian(rng, (n_r, n_t), 1.0)
    return ChannelRealization.from_matrix(H)


def sample_channels(
    rng: np.random.Generator,
    count: int,
    n_r: int = DEFAULT_ANTENNAS,
    n_t: int = DEFAULT_ANTENNAS
) -> list[ChannelRealization]:
    """채널 count개를 순서대로 생성"""
    return [sample_channel(rng, n_r, n_t) for _ in range(count)]


def sample_noise(rng: np.random.Generator, shape: tuple[int, ...], noise_power: float) -> np.ndarray:
    """
    복소 AWGN 샘플 CN(0, N0)

    N0 = 0 이어도 같은 양의 난수를 소비하여 스트림 위치가 N0와 무관하게 유지됩니다.
    """
    if noise_power < 0:
        raise InvalidInputError(f"잡음 전력은 음수일 수 없습니다: {noise_power}")
    return _complex_gaussian(rng, shape, noise_power)


def apply_channel(
    H: np.ndarray,
    x: np.ndarray,
    noise_power: float,
    rng: np.random.Generator
) -> np.ndarray:
    """
    y = H x + w, w ~ CN(0, N0 I)

    Args:
        H: (N_r, N_t) 채널 행렬
        x: (N_t,) 또는 (batch, N_t) 복소 송신 벡터
        noise_power: N0 (≥ 0)
        rng: 난수 생성기

    Returns:
        np.ndarray: (N_r,) 또는 (batch, N_r) 수신 벡터

    Raises:
        DimensionMismatchError: x의 마지막 차원이 N_t가 아닌 경우
    """
    H = np.asarray(H, dtype=complex)
    x = np.asarray(x, dtype=complex)
    if x.shape[-1] != H.shape[1]:
        raise DimensionMismatchError(f"송신 벡터 차원({x.shape[-1]})이 채널 열 수({H.shape[1]})와 다릅니다")

    received = x @ H.T
    return received + sample_noise(rng, received.shape, noise_power)
