"""src.core.config.py
환경 변수(.env)에서 실행 환경 설정을 할당합니다.
"""
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    ENVIRONMENT: str = "dev"  # dev: 로컬, prod: 서버환경
    LOG_LEVEL: str = "INFO"

    # 산출물 기본 디렉토리 (CLI --output-dir 미지정 시 사용)
    OUTPUT_DIR: str = "runs"

    # 평가/학습 병렬 워커 수 (1이면 순차 실행)
    WORKERS: int = 1

    # prod 환경 파일 로그 경로
    LOG_DIR: str = "logs"

    model_config = SettingsConfigDict(env_file=".env", extra="ignore")
settings = Settings()
