"""src.commands
CLI 명령 등록 (명령 이름 → 핸들러)
"""
from collections.abc import Callable

from src.commands.context import CommandContext, CommandResult
from src.commands import diagnostics, evaluate, train

COMMANDS: dict[str, Callable[[CommandContext], CommandResult]] = {
    "train": train.run,
    "eval": evaluate.run_eval,
    "baseline": evaluate.run_baseline,
    "sweep": evaluate.run_sweep,
    "grad-check": diagnostics.run_grad_check_command,
    "selftest": diagnostics.run_selftest_command,
}

__all__ = ["COMMANDS", "CommandContext", "CommandResult"]
