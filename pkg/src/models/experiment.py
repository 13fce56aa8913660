"""src.models.experiment
실험 설정 (DAE 구조 + 학습 스케줄 + 평가 격자 + 프로필)

프로필(full / desk)은 schedule, evaluation 의 기본값을 채우며, 파일이나
--set 으로 지정한 값이 항상 우선합니다.
"""
from enum import Enum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.models.dae_config import DaeConfig
from src.models.evaluation import EvaluationConfig
from src.models.training import TrainSchedule


class Profile(str, Enum):
    """기본값 프리셋"""
    FULL = "full"
    DESK = "desk"


PROFILE_PRESETS: dict[Profile, dict[str, dict[str, Any]]] = {
    Profile.FULL: {
        "schedule": {
            "channels_per_round": 2000,
            "batch_size": 2000,
            "rounds": 1000,
            "learning_rate": 1e-4,
            "decay": 0.995,
            "checkpoint_every": 50,
        },
        "evaluation": {"n_channels": 2000, "frames_per_point": 200000},
    },
    Profile.DESK: {
        "schedule": {
            "channels_per_round": 200,
            "batch_size": 500,
            "rounds": 60,
            "learning_rate": 1e-3,
            "decay": 0.97,
            "checkpoint_every": 20,
        },
        "evaluation": {"n_channels": 200, "frames_per_point": 20000},
    },
}


class ExperimentConfig(BaseModel):
    """CLI 명령 하나가 사용하는 전체 설정 (알 수 없는 키는 거부)"""
    model_config = ConfigDict(extra="forbid")

    profile: Profile = Field(default=Profile.DESK, description="기본값 프리셋")
    dae: DaeConfig = Field(default_factory=DaeConfig, description="DAE 구조")
    schedule: TrainSchedule = Field(default_factory=TrainSchedule, description="학습 스케줄")
    evaluation: EvaluationConfig = Field(default_factory=EvaluationConfig, description="평가 설정")
    baseline_frames_per_point: int | None = Field(
        default=None, ge=1, description="기준선 격자점당 프레임 수 (None이면 evaluation 값 사용)"
    )

    @model_validator(mode="before")
    @classmethod
    def _apply_profile(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        try:
            profile = Profile(data.get("profile", Profile.DESK))
        except ValueError:
            # 잘못된 프로필은 필드 검증에서 보고
            return data
        merged = dict(data)
        for section, defaults in PROFILE_PRESETS[profile].items():
            given = data.get(section) or {}
            if isinstance(given, dict):
                merged[section] = {**defaults, **given}
        return merged
