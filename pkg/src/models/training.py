"""src.models.training
학습 스케줄, 라운드 기록, 체크포인트 메타데이터 스키마
"""
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.models.dae_config import DaeConfig


class TrainSchedule(BaseModel):
    """채널 순회 학습 스케줄 (라운드 r의 학습률 = learning_rate · decay^(r−1))"""
    model_config = ConfigDict(extra="forbid")

    channels_per_round: int = Field(default=2000, ge=1, description="M_c: 학습 채널 수")
    batch_size: int = Field(default=2000, ge=1, description="M_b: 채널당 배치 크기")
    rounds: int = Field(default=1000, ge=1, description="M_r: 라운드 수")
    learning_rate: float = Field(default=1e-4, gt=0, description="초기 학습률 l_r")
    decay: float = Field(default=0.995, gt=0, le=1, description="라운드별 학습률 감쇠 α_r")
    n0_range_db: tuple[float, float] = Field(default=(-20.0, 25.0), description="N0 균등 추출 범위 (dB)")
    seed: int = Field(default=0, ge=0, description="마스터 시드")
    checkpoint_every: int = Field(default=0, ge=0, description="K 라운드마다 체크포인트 (0 = 마지막만)")

    @model_validator(mode="after")
    def _check_range(self) -> "TrainSchedule":
        low, high = self.n0_range_db
        if low > high:
            raise ValueError(f"n0_range_db 하한이 상한보다 큽니다: {self.n0_range_db}")
        return self

    def learning_rate_at(self, round_index: int) -> float:
        """1-based 라운드의 학습률"""
        return self.learning_rate * self.decay ** (round_index - 1)

    def resume_key(self) -> dict:
        """체크포인트 재개 시 일치해야 하는 항목 (라운드 수와 저장 주기 제외)"""
        return self.model_dump(mode="json", exclude={"rounds", "checkpoint_every"})


class RoundRecord(BaseModel):
    """라운드별 학습 기록"""
    round: int = Field(..., ge=1, description="라운드 번호 (1-based)")
    lr: float = Field(..., description="해당 라운드 학습률")
    mean_loss: float = Field(..., description="라운드 평균 배치 손실")


class CheckpointMeta(BaseModel):
    """체크포인트에 JSON으로 함께 저장되는 메타데이터"""
    format_version: int = Field(..., description="체크포인트 포맷 버전")
    config_hash: str = Field(..., description="DaeConfig + 스케줄 재개 키 해시")
    dae: DaeConfig = Field(..., description="DAE 구조 설정")
    schedule: TrainSchedule = Field(..., description="학습 스케줄")
    round: int = Field(..., ge=0, description="완료된 라운드 수")
    adam_t: int = Field(..., ge=0, description="Adam 스텝 카운터")
    param_shapes: list[list[int]] = Field(..., description="학습 파라미터 배열 형태 (저장 순서)")
    history: list[RoundRecord] = Field(default_factory=list, description="라운드별 기록")
