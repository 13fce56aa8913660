"""src.services.dae.encoding
DAE 입력 인코딩 (비트 / Gray one-hot + CSI 특징)과 출력 비트 결정
"""
from dataclasses import dataclass

import numpy as np

from src.core.exceptions import DimensionMismatchError, InvalidInputError
from src.models.dae_config import DaeVariant, InputMode
from src.models.error_counts import FrameErrorCounts
from src.services.channel import ChannelRealization
from src.utils.gray_code import bits_to_codeword, codeword_to_bits, gray_decode, gray_encode

GAMMA_FLOOR = 1e-6
DB_SCALE = 0.2


def centered_sigmoid(t: np.ndarray | float) -> np.ndarray:
    """S_c(t) = 2 / (1 + e^(−t)) − 1 = tanh(t/2), 값 범위 (−1, 1)"""
    return np.tanh(0.5 * np.asarray(t, dtype=float))


def csi_feature(gamma: np.ndarray) -> np.ndarray:
    """
    서브채널 CNR γ_i를 dB 스케일로 (−1, 1) 구간에 압축한 특징

    v_γ,i = S_c(0.2 · 10·log10(γ_i + 1e-6)), γ_i = inf 이면 1

    Raises:
        InvalidInputError: 음수 또는 NaN γ
    """
    gamma = np.asarray(gamma, dtype=float)
    if np.any(np.isnan(gamma)) or np.any(gamma < 0):
        raise InvalidInputError(f"γ는 0 이상이어야 합니다: {gamma.tolist()}")
    return centered_sigmoid(DB_SCALE * 10.0 * np.log10(gamma + GAMMA_FLOOR))


def plain_csi_feature(H: np.ndarray, noise_power: float) -> np.ndarray:
    """
    plain DAE 특징: [Re vec(H), Im vec(H), S_c(0.2 · (−10·log10 N0))]

    N0 = 0 이면 잡음 특징은 1 입니다.
    """
    H = np.asarray(H, dtype=complex)
    with np.errstate(divide="ignore"):
        noise_db = -10.0 * np.log10(noise_power)
    return np.concatenate([H.real.ravel(), H.imag.ravel(), [float(centered_sigmoid(DB_SCALE * noise_db))]])


def channel_feature(channel: ChannelRealization, variant: DaeVariant) -> np.ndarray:
    """변형에 맞는 CSI 특징 벡터 (N0가 설정된 채널 필요)"""
    if channel.noise_power is None:
        raise InvalidInputError("잡음 전력(N0)이 설정되지 않은 채널입니다")
    if variant == DaeVariant.PLAIN:
        return plain_csi_feature(channel.H, channel.noise_power)
    return csi_feature(channel.gamma)


@dataclass(frozen=True)
class EncodedInput:
    """송신 DAE 입력 (배치 페이로드 + 공통 CSI 특징)"""
    payload: np.ndarray  # (B, N_s) ±1 또는 (B, 2^N_s) one-hot
    csi: np.ndarray  # (csi_width,)

    def stacked(self) -> np.ndarray:
        """[payload, csi] (B, payload + csi)"""
        batch = self.payload.shape[0]
        return np.concatenate([self.payload, np.broadcast_to(self.csi, (batch, self.csi.size))], axis=1)


def _check_bits(bits: np.ndarray) -> np.ndarray:
    bits = np.atleast_2d(np.asarray(bits, dtype=float))
    if not np.all(np.abs(bits) == 1.0):
        raise InvalidInputError("비트 벡터 원소는 −1 또는 +1 이어야 합니다")
    return bits


def bits_to_one_hot(bits: np.ndarray) -> np.ndarray:
    """±1 비트 (B, N_s) → Gray 인덱스 one-hot (B, 2^N_s), (−1,…,−1) → 인덱스 0"""
    bits = _check_bits(bits)
    index = gray_decode(bits_to_codeword(bits))
    one_hot = np.zeros((bits.shape[0], 2 ** bits.shape[1]))
    one_hot[np.arange(bits.shape[0]), index] = 1.0
    return one_hot


def encode_input(bits: np.ndarray, mode: InputMode, csi: np.ndarray) -> EncodedInput:
    """
    Args:
        bits: (B, N_s) 또는 (N_s,) ±1 비트
        mode: bit / one-hot
        csi: CSI 특징 벡터

    Returns:
        EncodedInput
    """
    bits = _check_bits(bits)
    payload = bits.copy() if mode == InputMode.BIT else bits_to_one_hot(bits)
    return EncodedInput(payload=payload, csi=np.asarray(csi, dtype=float))


def decide_bits(raw: np.ndarray, mode: InputMode, n_s: int) -> np.ndarray:
    """
    수신 DAE 출력 → ±1 비트

    - bit: 부호 (정확히 0이면 +1)
    - one-hot: argmax 인덱스 → Gray 코드워드 → 비트
    """
    raw = np.atleast_2d(raw)
    if mode == InputMode.BIT:
        if raw.shape[-1] != n_s:
            raise DimensionMismatchError(f"bit 모드 출력 폭은 N_s={n_s} 이어야 합니다: {raw.shape[-1]}")
        return np.where(raw >= 0, 1.0, -1.0)
    if raw.shape[-1] != 2 ** n_s:
        raise DimensionMismatchError(f"one-hot 모드 출력 폭은 2^N_s={2 ** n_s} 이어야 합니다: {raw.shape[-1]}")
    return codeword_to_bits(gray_encode(np.argmax(raw, axis=-1)), n_s)


def frame_ber(decided: np.ndarray, bits: np.ndarray) -> np.ndarray:
    """프레임별 BER = 불일치 비트 수 / N_s"""
    return np.mean(np.atleast_2d(decided) != np.atleast_2d(bits), axis=-1)


def count_errors(decided: np.ndarray, bits: np.ndarray) -> FrameErrorCounts:
    """배치 오류 집계 (프레임 오류 = 비트 오류가 하나라도 있는 프레임)"""
    mismatches = np.atleast_2d(decided) != np.atleast_2d(bits)
    return FrameErrorCounts(
        bit_errors=int(mismatches.sum()),
        frame_errors=int(mismatches.any(axis=-1).sum()),
        frames=mismatches.shape[0],
        bits_per_frame=mismatches.shape[1],
    )
