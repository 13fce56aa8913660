"""src.services.training
학습 루프와 체크포인트
"""
from src.services.training.checkpoint import (
    FORMAT_VERSION,
    TrainingState,
    config_hash,
    load_checkpoint,
    save_checkpoint,
)
from src.services.training.trainer import (
    DIVERGENCE_DUMP,
    TrainingResult,
    TrainingStep,
    draw_step,
    train,
    training_channels,
    write_history_csv,
)

__all__ = [
    "FORMAT_VERSION",
    "TrainingState",
    "config_hash",
    "load_checkpoint",
    "save_checkpoint",
    "DIVERGENCE_DUMP",
    "TrainingResult",
    "TrainingStep",
    "draw_step",
    "train",
    "training_channels",
    "write_history_csv",
]
