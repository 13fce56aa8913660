"""src.utils.common
공통 유틸리티 함수 (Spring의 CommonUtil 스타일)
"""
import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any

import numpy as np

from src.core.exceptions import RunConflictError

logger = logging.getLogger(__name__)


# ============================================================
# 난수 스트림 키 (SeedSequence spawn_key 첫 번째 원소)
# ============================================================
STREAM_TRAIN_CHANNELS = 0  # 학습 채널 집합
STREAM_INIT = 1  # 가중치 초기화
STREAM_TRAIN_STEP = 2  # (round, channel) 별 N0/비트/잡음
STREAM_EVAL_CHANNELS = 3  # 평가용 held-out 채널 집합
STREAM_EVAL_POINT = 4  # (grid point, channel) 별 평가 프레임
STREAM_DIAGNOSTICS = 5  # selftest / grad-check


def derive_rng(seed: int, *keys: int) -> np.random.Generator:
    """
    마스터 시드와 정수 키 경로로부터 독립적인 난수 생성기를 만듭니다.

    같은 (seed, keys)는 항상 같은 스트림을 돌려주므로 체크포인트 재개 시에도
    끊김 없는 실행과 동일한 난수열이 재현됩니다.

    Args:
        seed: 마스터 시드
        keys: 스트림 용도와 인덱스 (예: STREAM_TRAIN_STEP, round, channel)

    Returns:
        np.random.Generator: 독립 스트림 생성기
    """
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=tuple(int(key) for key in keys))
    return np.random.default_rng(sequence)


def stable_hash(payload: Any) -> str:
    """
    JSON 직렬화 가능한 객체의 결정적 해시 (설정 해시용)

    Args:
        payload: dict/list 등 JSON 직렬화 가능한 값

    Returns:
        str: sha256 hex 앞 16자리
    """
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


def ensure_fresh_output(path: Path, force: bool = False) -> Path:
    """
    산출물 경로가 이전 실행 결과를 덮어쓰지 않는지 확인합니다.

    Args:
        path: 생성할 파일 또는 디렉토리
        force: True면 기존 파일을 덮어쓰는 것을 허용

    Returns:
        Path: 검증된 경로

    Raises:
        RunConflictError: 이미 존재하고 force=False인 경우
    """
    if path.exists() and not force:
        raise RunConflictError(f"이미 존재하는 산출물입니다 (덮어쓰려면 --force): {path}")
    return path


def atomic_write_bytes(path: Path, data: bytes) -> None:
    """
    임시 파일에 쓴 뒤 os.replace로 교체하여 부분 기록 상태를 남기지 않습니다.

    Args:
        path: 최종 파일 경로
        data: 기록할 바이트
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp_name, path)
    except Exception:
        Path(tmp_name).unlink(missing_ok=True)
        raise


def atomic_write_text(path: Path, text: str) -> None:
    """텍스트 파일 원자적 기록 (UTF-8)"""
    atomic_write_bytes(path, text.encode("utf-8"))
