"""src.models.diagnostics
selftest / grad-check 리포트 스키마
"""
from typing import Any

from pydantic import BaseModel, Field


class CheckResult(BaseModel):
    """오라클 검사 하나의 결과"""
    name: str = Field(..., description="검사 이름")
    passed: bool = Field(..., description="통과 여부")
    detail: dict[str, Any] = Field(default_factory=dict, description="측정값, 허용 오차 등")


class DiagnosticsReport(BaseModel):
    """검사 묶음 리포트"""
    command: str = Field(..., description="selftest / grad-check")
    seed: int = Field(..., description="진단 시드")
    config_hash: str = Field(default="", description="실행 설정 해시")
    checks: list[CheckResult] = Field(default_factory=list, description="검사 결과 목록")

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)
