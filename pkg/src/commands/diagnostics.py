"""src.commands.diagnostics
selftest / grad-check 명령
"""
import logging

from src.commands.context import CommandContext, CommandResult, write_report
from src.core.exceptions import ConfigValidationError
from src.services.diagnostics import run_grad_check, run_selftest
from src.services.training import load_checkpoint
from src.utils.config_loader import experiment_hash

logger = logging.getLogger(__name__)


def run_selftest_command(context: CommandContext) -> CommandResult:
    """해석적 오라클 실행 → selftest/report.json"""
    path = context.artifact_dir("selftest") / "report.json"
    context.claim(path)

    report = run_selftest(seed=context.config.schedule.seed)
    report.config_hash = experiment_hash(context.config)
    write_report(path, report)

    failed = [check.name for check in report.checks if not check.passed]
    if failed:
        logger.error(f"selftest 실패 항목: {failed}")
    return CommandResult(artifacts=[path], passed=report.passed)


def run_grad_check_command(context: CommandContext) -> CommandResult:
    """전체 그래프 기울기 검증 → grad_check/report.json (--checkpoint 지정 시 학습된 모델 검사)"""
    if len(context.checkpoints) > 1:
        raise ConfigValidationError("grad-check 에는 --checkpoint 를 하나만 지정할 수 있습니다")
    path = context.artifact_dir("grad_check") / "report.json"
    context.claim(path)

    config, model, config_hash = context.config.dae, None, experiment_hash(context.config)
    if context.checkpoints:
        state = load_checkpoint(context.checkpoints[0])
        config, model, config_hash = state.meta.dae, state.model, state.meta.config_hash

    report = run_grad_check(config, seed=context.config.schedule.seed, model=model)
    report.config_hash = config_hash
    write_report(path, report)
    return CommandResult(artifacts=[path], passed=report.passed)
