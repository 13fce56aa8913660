"""src.utils.config_loader
YAML 실험 설정 파일 + --set key=value 오버라이드 로딩
"""
import logging
from pathlib import Path
from typing import Any

import yaml
from pydantic import ValidationError

from src.core.exceptions import ConfigValidationError
from src.models.experiment import ExperimentConfig
from src.utils.common import stable_hash

logger = logging.getLogger(__name__)


def _read_yaml(path: Path) -> dict[str, Any]:
    if not path.exists():
        raise ConfigValidationError(f"설정 파일이 없습니다: {path}")
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as e:
        raise ConfigValidationError(f"설정 파일을 해석할 수 없습니다: {path} ({e})") from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigValidationError(f"설정 파일의 최상위는 매핑이어야 합니다: {path}")
    return data


def apply_override(data: dict[str, Any], override: str) -> dict[str, Any]:
    """
    점 표기 키 오버라이드를 적용합니다 (값은 YAML 스칼라/리스트로 해석).

    Examples:
        >>> apply_override({}, "dae.n_s=2")
        {'dae': {'n_s': 2}}
    """
    if "=" not in override:
        raise ConfigValidationError(f"오버라이드는 key=value 형식이어야 합니다: {override}")
    key, raw = override.split("=", 1)
    parts = [part for part in key.strip().split(".") if part]
    if not parts:
        raise ConfigValidationError(f"오버라이드 키가 비어 있습니다: {override}")
    try:
        value = yaml.safe_load(raw)
    except yaml.YAMLError as e:
        raise ConfigValidationError(f"오버라이드 값을 해석할 수 없습니다: {override}") from e

    node = data
    for part in parts[:-1]:
        child = node.get(part)
        if child is None:
            child = node[part] = {}
        if not isinstance(child, dict):
            raise ConfigValidationError(f"'{part}' 는 하위 키를 가질 수 없습니다: {override}")
        node = child
    node[parts[-1]] = value
    return data


def format_validation_error(error: ValidationError) -> str:
    """필드 경로별 메시지 (예: dae.unknown: Extra inputs are not permitted)"""
    lines = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "<root>"
        lines.append(f"{location}: {item['msg']}")
    return "; ".join(lines)


def load_experiment_config(path: Path | None = None, overrides: list[str] | None = None) -> ExperimentConfig:
    """
    설정 파일과 오버라이드를 합쳐 검증된 ExperimentConfig 를 만듭니다.

    Raises:
        ConfigValidationError: 파일 없음, YAML 오류, 알 수 없는 키, 값 검증 실패
    """
    data = _read_yaml(Path(path)) if path else {}
    for override in overrides or []:
        apply_override(data, override)
    try:
        config = ExperimentConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigValidationError(f"설정 검증 실패: {format_validation_error(e)}") from e
    logger.debug(f"설정 로드 완료: profile={config.profile.value}, hash={experiment_hash(config)}")
    return config


def experiment_hash(config: ExperimentConfig) -> str:
    return stable_hash(config.model_dump(mode="json"))
