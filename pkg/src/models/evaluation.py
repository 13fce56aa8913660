"""src.models.evaluation
BER 평가 설정과 결과 곡선 / 비교 리포트 스키마
"""
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class EvaluationConfig(BaseModel):
    """Eb/N0 격자와 held-out 채널 평가 설정"""
    model_config = ConfigDict(extra="forbid")

    ebn0_start_db: float = Field(default=-10.0, description="격자 시작 Eb/N0 (dB)")
    ebn0_stop_db: float = Field(default=20.0, description="격자 끝 Eb/N0 (dB, 포함)")
    ebn0_step_db: float = Field(default=2.5, gt=0, description="격자 간격 (dB)")
    frames_per_point: int = Field(default=20000, ge=1, description="격자점당 총 프레임 수 (채널 수로 균등 분배)")
    n_channels: int = Field(default=2000, ge=1, description="held-out 평가 채널 수")
    seed: int = Field(default=1, ge=0, description="평가 시드 (학습 시드와 별개 스트림)")

    @model_validator(mode="after")
    def _check_grid(self) -> "EvaluationConfig":
        if self.ebn0_stop_db < self.ebn0_start_db:
            raise ValueError("ebn0_stop_db는 ebn0_start_db 이상이어야 합니다")
        return self

    def grid(self) -> np.ndarray:
        """[start, stop] 양끝 포함 격자"""
        count = int(np.floor((self.ebn0_stop_db - self.ebn0_start_db) / self.ebn0_step_db + 1e-9)) + 1
        return np.round(self.ebn0_start_db + self.ebn0_step_db * np.arange(count), 10)


class BerRow(BaseModel):
    """격자점 하나의 측정 결과"""
    ebn0_db: float = Field(..., description="Eb/N0 (dB)")
    snr_db: float = Field(..., description="SNR (dB) = Eb/N0 + 10·log10(N_s)")
    ber: float = Field(..., ge=0, le=1, description="비트 오류율")
    ser: float = Field(..., ge=0, le=1, description="프레임(심볼) 오류율")
    frames: int = Field(..., ge=1, description="전송 프레임 수")
    bit_errors: int = Field(..., ge=0, description="비트 오류 수")
    frame_errors: int = Field(..., ge=0, description="프레임 오류 수")
    ber_low: float = Field(..., ge=0, le=1, description="BER 95% 구간 하한")
    ber_high: float = Field(..., ge=0, le=1, description="BER 95% 구간 상한 (오류 0이면 단측 상한)")


class BerCurve(BaseModel):
    """BER 곡선과 재현용 메타데이터"""
    label: str = Field(..., description="곡선 이름 (변형/체크포인트)")
    n_s: int = Field(..., description="전송당 비트 수")
    config_hash: str = Field(..., description="설정 해시")
    seed: int = Field(..., description="평가 시드")
    channel_set_id: str = Field(..., description="평가 채널 집합 식별자")
    rows: list[BerRow] = Field(default_factory=list, description="격자점별 결과")

    @model_validator(mode="after")
    def _check_rows(self) -> "BerCurve":
        offset = 10.0 * np.log10(self.n_s)
        for row in self.rows:
            if row.bit_errors > row.frames * self.n_s:
                raise ValueError(f"비트 오류 수가 전송 비트 수를 넘습니다: {row}")
            if abs(row.snr_db - row.ebn0_db - offset) > 1e-9:
                raise ValueError(f"SNR과 Eb/N0 차이가 10·log10(N_s)가 아닙니다: {row}")
        return self

    @property
    def grid(self) -> list[float]:
        return [row.ebn0_db for row in self.rows]


class ComparisonPoint(BaseModel):
    """격자점별 BER 비 (기준 곡선 대비)"""
    ebn0_db: float = Field(..., description="Eb/N0 (dB)")
    ratios: dict[str, float | None] = Field(..., description="곡선 이름 → 상대 BER / 기준 BER (기준 BER이 0이면 None)")


class CurveComparison(BaseModel):
    """곡선 비교 리포트 (첫 번째 곡선이 기준)"""
    candidate: str = Field(..., description="기준 곡선 이름")
    points: list[ComparisonPoint] = Field(default_factory=list, description="격자점별 비율")
    min_ratio: dict[str, float | None] = Field(default_factory=dict, description="곡선별 최소 비율")
    max_ratio: dict[str, float | None] = Field(default_factory=dict, description="곡선별 최대 비율")
