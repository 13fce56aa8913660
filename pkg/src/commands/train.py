"""src.commands.train
train 명령: DAE 학습 → 체크포인트 + 학습 기록 CSV
"""
import logging

from src.commands.context import CommandContext, CommandResult
from src.services.training import config_hash, load_checkpoint, train, write_history_csv

logger = logging.getLogger(__name__)


def run(context: CommandContext) -> CommandResult:
    """
    산출물
    - train/checkpoint_rXXXX.npz (checkpoint_every 라운드마다)
    - train/checkpoint_final.npz
    - train/history.csv (round, lr, mean_loss)
    """
    config = context.config
    out = context.artifact_dir("train")
    history_path = out / "history.csv"
    final_path = out / "checkpoint_final.npz"
    every = config.schedule.checkpoint_every
    periodic = [out / f"checkpoint_r{r:04d}.npz" for r in range(every, config.schedule.rounds + 1, every)] if every else []
    context.claim(history_path, final_path, *periodic)

    resume = None
    if context.resume is not None:
        resume = load_checkpoint(context.resume, expected_hash=config_hash(config.dae, config.schedule))

    result = train(config.dae, config.schedule, checkpoint_dir=out, resume=resume)
    write_history_csv(history_path, result.history, result.config_hash, config.schedule.seed)

    logger.info(f"학습 완료: {len(result.history)} 라운드, Adam 스텝 {result.model.adam.t}, 산출물 {out}")
    return CommandResult(artifacts=[*result.checkpoints, history_path])
