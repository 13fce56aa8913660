"""src.main
CLI 진입점

    python -m src.main <train|eval|baseline|sweep|grad-check|selftest> [옵션]

종료 코드: 0 성공, 1 검증 오류 (설정/덮어쓰기/체크포인트 없음), 2 실행 중 오류
"""
import argparse
import logging
import sys
import time
from pathlib import Path

from src.commands import COMMANDS, CommandContext
from src.core.config import settings
from src.core.exceptions import EXIT_RUNTIME, CustomError
from src.core.logging import setup_logging
from src.utils.config_loader import load_experiment_config

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="python -m src.main",
        description="SVD 임베딩 DAE MIMO 링크 시뮬레이터 / 학습기",
    )
    parser.add_argument("command", choices=sorted(COMMANDS), help="실행할 명령")
    parser.add_argument("--config", type=Path, default=None, help="YAML 실험 설정 파일")
    parser.add_argument(
        "--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
        help="설정 오버라이드 (예: --set dae.n_s=2 --set schedule.rounds=10)",
    )
    parser.add_argument("--output-dir", type=Path, default=None, help=f"산출물 디렉토리 (기본: OUTPUT_DIR={settings.OUTPUT_DIR})")
    parser.add_argument("--force", action="store_true", help="기존 산출물 덮어쓰기 허용")
    parser.add_argument("--workers", type=int, default=None, help=f"평가 병렬 워커 수 (기본: WORKERS={settings.WORKERS})")
    parser.add_argument(
        "--checkpoint", dest="checkpoints", type=Path, action="append", default=[],
        help="평가/검증할 체크포인트 (sweep은 여러 번 지정)",
    )
    parser.add_argument("--resume", type=Path, default=None, help="train 재개 체크포인트")
    parser.add_argument("--with-baseline", action="store_true", help="sweep 비교에 기준선 곡선 포함")
    parser.add_argument("--log-level", default=None, help="로그 레벨 (기본: LOG_LEVEL)")
    return parser


def main(argv: list[str] | None = None) -> int:
    """
    CLI 실행

    Returns:
        int: 프로세스 종료 코드
    """
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)

    started = time.time()
    logger.info(f"=== {args.command} 시작 ===")
    try:
        config = load_experiment_config(args.config, args.overrides)
        workers = args.workers if args.workers is not None else settings.WORKERS
        context = CommandContext(
            config=config,
            output_dir=args.output_dir or Path(settings.OUTPUT_DIR),
            force=args.force,
            workers=max(1, workers),
            checkpoints=args.checkpoints,
            resume=args.resume,
            with_baseline=args.with_baseline,
        )
        result = COMMANDS[args.command](context)

    except CustomError as e:
        logger.error(f"{args.command} 실패: {e.message}")
        return e.exit_code
    except Exception as e:
        logger.exception(f"{args.command} 예기치 못한 오류: {e}")
        return EXIT_RUNTIME

    for path in result.artifacts:
        logger.info(f"산출물: {path}")
    elapsed = time.time() - started
    if not result.passed:
        logger.error(f"=== {args.command} 검사 실패 ({elapsed:.1f}초) ===")
        return EXIT_RUNTIME
    logger.info(f"=== {args.command} 완료 ({elapsed:.1f}초) ===")
    return 0


if __name__ == "__main__":
    sys.exit(main())
