"""공통 pytest 픽스처"""
import numpy as np
import pytest

from src.models.dae_config import DaeConfig
from src.models.training import TrainSchedule


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240601)


@pytest.fixture
def small_config() -> DaeConfig:
    """빠른 테스트용 축소 은닉층"""
    return DaeConfig(n_s=2, hidden_width=8)


@pytest.fixture
def tiny_schedule() -> TrainSchedule:
    return TrainSchedule(
        channels_per_round=3,
        batch_size=16,
        rounds=2,
        learning_rate=1e-3,
        decay=0.9,
        seed=7,
    )
