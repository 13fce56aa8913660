"""src.services.training.checkpoint
학습 상태 체크포인트 (.npz + JSON 메타데이터)

저장 항목: 학습 파라미터, Adam 1차/2차 모멘트, 스텝 카운터, 완료 라운드, 설정 해시, 학습 기록.
파일은 임시 파일에 쓴 뒤 교체하므로 중단되어도 부분 기록이 남지 않습니다.
"""
import io
import json
import logging
import zipfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from src.core.exceptions import (
    CheckpointError,
    CheckpointNotFoundError,
    CheckpointVersionError,
    ConfigHashMismatchError,
    CorruptCheckpointError,
    DimensionMismatchError,
)
from src.models.dae_config import DaeConfig
from src.models.training import CheckpointMeta, RoundRecord, TrainSchedule
from src.services.dae import DaeModel
from src.utils.common import STREAM_INIT, atomic_write_bytes, derive_rng, stable_hash

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
METADATA_KEY = "metadata"


@dataclass
class TrainingState:
    """체크포인트에서 복원된 학습 상태"""
    model: DaeModel
    meta: CheckpointMeta

    @property
    def round(self) -> int:
        return self.meta.round

    @property
    def history(self) -> list[RoundRecord]:
        return list(self.meta.history)


def config_hash(config: DaeConfig, schedule: TrainSchedule) -> str:
    """구조 설정 + 재개 키(시드, M_c, M_b, 학습률, 감쇠, N0 범위) 해시"""
    return stable_hash({"dae": config.model_dump(mode="json"), "schedule": schedule.resume_key()})


def save_checkpoint(
    path: Path,
    model: DaeModel,
    schedule: TrainSchedule,
    round_index: int,
    history: list[RoundRecord]
) -> Path:
    """
    체크포인트 저장

    Args:
        path: .npz 파일 경로
        model: 학습 중인 모델 (파라미터 + Adam 상태)
        schedule: 학습 스케줄
        round_index: 완료된 라운드 수
        history: 라운드별 기록

    Returns:
        Path: 저장된 경로

    Raises:
        CheckpointError: 파일 기록 실패
    """
    params = model.parameters()
    meta = CheckpointMeta(
        format_version=FORMAT_VERSION,
        config_hash=config_hash(model.config, schedule),
        dae=model.config,
        schedule=schedule,
        round=round_index,
        adam_t=model.adam.t,
        param_shapes=[list(p.shape) for p in params],
        history=history,
    )

    arrays = {METADATA_KEY: np.array(meta.model_dump_json())}
    for index, (param, m, v) in enumerate(zip(params, model.adam.m, model.adam.v)):
        arrays[f"param_{index:03d}"] = param
        arrays[f"adam_m_{index:03d}"] = m
        arrays[f"adam_v_{index:03d}"] = v

    buffer = io.BytesIO()
    np.savez(buffer, **arrays)
    try:
        atomic_write_bytes(path, buffer.getvalue())
    except OSError as e:
        raise CheckpointError(f"체크포인트 저장 실패: {path} ({e})") from e

    logger.info(f"체크포인트 저장: {path} (round={round_index}, adam_t={model.adam.t})")
    return path


def _read_archive(path: Path) -> tuple[CheckpointMeta, dict[str, np.ndarray]]:
    if not path.exists():
        raise CheckpointNotFoundError(f"체크포인트 파일이 없습니다: {path}")
    try:
        with np.load(path, allow_pickle=False) as archive:
            arrays = {key: archive[key] for key in archive.files}
    except (OSError, ValueError, EOFError, KeyError, zipfile.BadZipFile) as e:
        raise CorruptCheckpointError(f"손상된 체크포인트입니다: {path} ({e})") from e

    if METADATA_KEY not in arrays:
        raise CorruptCheckpointError(f"체크포인트 메타데이터가 없습니다: {path}")
    try:
        payload = json.loads(str(arrays.pop(METADATA_KEY)))
    except json.JSONDecodeError as e:
        raise CorruptCheckpointError(f"체크포인트 메타데이터를 해석할 수 없습니다: {path}") from e

    version = payload.get("format_version")
    if version != FORMAT_VERSION:
        raise CheckpointVersionError(f"지원하지 않는 체크포인트 버전입니다: {version} (지원: {FORMAT_VERSION})")
    try:
        meta = CheckpointMeta.model_validate(payload)
    except ValidationError as e:
        raise CorruptCheckpointError(f"체크포인트 메타데이터 검증 실패: {path} ({e.error_count()}개 오류)") from e
    return meta, arrays


def load_checkpoint(path: Path, expected_hash: str | None = None) -> TrainingState:
    """
    체크포인트를 읽어 모델과 Adam 상태를 복원합니다.

    Args:
        path: .npz 파일 경로
        expected_hash: 현재 설정의 config_hash (지정 시 불일치면 거부)

    Returns:
        TrainingState

    Raises:
        CheckpointNotFoundError: 파일 없음
        CorruptCheckpointError: 잘림/손상/배열 누락
        CheckpointVersionError: 포맷 버전 불일치
        ConfigHashMismatchError: 설정 해시 불일치
    """
    path = Path(path)
    meta, arrays = _read_archive(path)

    if meta.config_hash != config_hash(meta.dae, meta.schedule):
        raise CorruptCheckpointError(f"체크포인트 메타데이터와 해시가 일치하지 않습니다: {path}")
    if expected_hash is not None and meta.config_hash != expected_hash:
        raise ConfigHashMismatchError(
            f"체크포인트 설정 해시({meta.config_hash})가 현재 설정({expected_hash})과 다릅니다: {path}"
        )

    model = DaeModel(meta.dae, derive_rng(meta.schedule.seed, STREAM_INIT))
    count = len(meta.param_shapes)
    try:
        params = [arrays[f"param_{index:03d}"] for index in range(count)]
        moments_m = [arrays[f"adam_m_{index:03d}"] for index in range(count)]
        moments_v = [arrays[f"adam_v_{index:03d}"] for index in range(count)]
    except KeyError as e:
        raise CorruptCheckpointError(f"체크포인트 배열이 누락되었습니다: {e}") from e
    if [list(p.shape) for p in params] != meta.param_shapes:
        raise CorruptCheckpointError(f"체크포인트 배열 형태가 메타데이터와 다릅니다: {path}")

    try:
        model.load_parameters(params)
        for target, source in zip(model.adam.m + model.adam.v, moments_m + moments_v):
            np.copyto(target, source, casting="no")
    except (DimensionMismatchError, ValueError) as e:
        raise CorruptCheckpointError(f"체크포인트 배열이 모델 구조와 맞지 않습니다: {path} ({e})") from e
    model.adam.t = meta.adam_t

    logger.info(f"체크포인트 로드: {path} (round={meta.round}, adam_t={meta.adam_t})")
    return TrainingState(model=model, meta=meta)
