"""src.models
설정 / 결과 / 진단 리포트에 사용되는 Pydantic 스키마 정의
"""
from src.models.dae_config import SUPPORTED_BITS, DaeConfig, DaeVariant, InputMode
from src.models.training import CheckpointMeta, RoundRecord, TrainSchedule
from src.models.evaluation import BerCurve, BerRow, ComparisonPoint, CurveComparison, EvaluationConfig
from src.models.experiment import PROFILE_PRESETS, ExperimentConfig, Profile
from src.models.diagnostics import CheckResult, DiagnosticsReport
from src.models.error_counts import FrameErrorCounts

__all__ = [
    # DAE 구조
    "SUPPORTED_BITS",
    "DaeConfig",
    "DaeVariant",
    "InputMode",
    # 학습
    "CheckpointMeta",
    "RoundRecord",
    "TrainSchedule",
    # 평가
    "BerCurve",
    "BerRow",
    "ComparisonPoint",
    "CurveComparison",
    "EvaluationConfig",
    "FrameErrorCounts",
    # 실험
    "PROFILE_PRESETS",
    "ExperimentConfig",
    "Profile",
    # 진단
    "CheckResult",
    "DiagnosticsReport",
]
