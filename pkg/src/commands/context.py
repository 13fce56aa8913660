"""src.commands.context
명령 공통 실행 컨텍스트와 결과
"""
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from pydantic import BaseModel

from src.models.experiment import ExperimentConfig
from src.utils.common import atomic_write_text, ensure_fresh_output

logger = logging.getLogger(__name__)


@dataclass
class CommandContext:
    """CLI 인자와 검증된 설정"""
    config: ExperimentConfig
    output_dir: Path
    force: bool = False
    workers: int = 1
    checkpoints: list[Path] = field(default_factory=list)
    resume: Path | None = None
    with_baseline: bool = False

    def artifact_dir(self, name: str) -> Path:
        return self.output_dir / name

    def claim(self, *paths: Path) -> None:
        """계산 전에 모든 산출물 경로의 덮어쓰기 여부를 확인"""
        for path in paths:
            ensure_fresh_output(path, self.force)


@dataclass
class CommandResult:
    """명령 실행 결과 (passed=False 이면 종료 코드 2)"""
    artifacts: list[Path] = field(default_factory=list)
    passed: bool = True


def write_report(path: Path, report: BaseModel) -> Path:
    """pydantic 리포트를 JSON으로 기록"""
    atomic_write_text(path, json.dumps(report.model_dump(mode="json"), indent=2, ensure_ascii=False) + "\n")
    logger.info(f"리포트 저장: {path}")
    return path
