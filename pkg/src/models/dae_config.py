"""src.models.dae_config
DAE 구조 설정 스키마 (변형, 입력 모드, 잔차 연결, N_s, 안테나 수, 은닉층, 송신 전력)
"""
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, field_validator

SUPPORTED_BITS = (1, 2, 4, 6)


class DaeVariant(str, Enum):
    """고정 레이어 구성"""
    PLAIN = "plain"
    SVD = "svd"
    SVD_WF = "svd-wf"


class InputMode(str, Enum):
    """송신 페이로드 표현"""
    BIT = "bit"
    ONE_HOT = "one-hot"


class DaeConfig(BaseModel):
    """
    DAE 구조 설정

    - bit 모드 입력 폭 = N_s + CSI 특징 폭
    - one-hot 모드 입력 폭 = 2^N_s + CSI 특징 폭
    - CSI 특징 폭: svd 계열은 N_t (γ), plain은 2·N_t·N_r + 1 (H 실수/허수 + 잡음 레벨)
    """
    model_config = ConfigDict(extra="forbid")

    variant: DaeVariant = Field(default=DaeVariant.SVD, description="plain / svd / svd-wf")
    input_mode: InputMode = Field(default=InputMode.BIT, description="bit / one-hot")
    residuals: bool = Field(default=True, description="은닉층 1→3, 3→5 shortcut 사용 여부")
    n_s: int = Field(default=4, description="전송당 비트 수 N_s ∈ {1, 2, 4, 6}")
    n_t: int = Field(default=2, ge=2, le=2, description="송신 안테나 수")
    n_r: int = Field(default=2, ge=2, le=2, description="수신 안테나 수")
    hidden_layers: int = Field(default=5, ge=1, description="은닉층 수")
    hidden_width: int = Field(default=32, ge=1, description="은닉층 노드 수")
    power: float = Field(default=20.0, gt=0, description="송신 전력 P (W)")

    @field_validator("n_s")
    @classmethod
    def _check_bits(cls, value: int) -> int:
        if value not in SUPPORTED_BITS:
            raise ValueError(f"N_s는 {SUPPORTED_BITS} 중 하나여야 합니다")
        return value

    @property
    def payload_width(self) -> int:
        return self.n_s if self.input_mode == InputMode.BIT else 2 ** self.n_s

    @property
    def csi_width(self) -> int:
        if self.variant == DaeVariant.PLAIN:
            return 2 * self.n_t * self.n_r + 1
        return self.n_t

    @property
    def tx_input_width(self) -> int:
        return self.payload_width + self.csi_width

    @property
    def rx_input_width(self) -> int:
        return 2 * self.n_t + self.csi_width

    @property
    def output_width(self) -> int:
        return self.payload_width
