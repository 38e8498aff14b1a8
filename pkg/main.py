# 主程序入口

import sys
import argparse

from config import Config
from loguru import logger
from core.pipeline import Pipeline, run_seeds
from common.utils import resolve_path

SUBCOMMANDS = ("validate", "synthesize", "longterm", "simulate", "analyze", "all")
DEFAULT_LOG_FORMAT = ("<green>{time:YYYY-MM-DD HH:mm:ss.SSS}</green> | <level>{level: <8}</level> | "
                      "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>")


def parse_seeds(value: str):
    try:
        return [int(part) for part in value.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed list '{value}'") from None


def parse_args(argv=None):
    """
    解析命令行参数

    Returns:
        argparse.Namespace: 解析后的参数
    """
    parser = argparse.ArgumentParser(description="一周多主体出行需求模拟")
    parser.add_argument(
        "subcommand",
        help="要执行的阶段",
        choices=SUBCOMMANDS
    )
    parser.add_argument(
        "-c", "--config",
        help="场景清单路径",
        default="config.yaml"
    )
    parser.add_argument(
        "-v", "--verbose",
        help="启用详细日志",
        action="store_true"
    )
    parser.add_argument("--seed", type=int, help="覆盖模拟随机种子")
    parser.add_argument("--rescheduling", choices=["none", "truncate_day", "skip_keep_last"], help="覆盖重排策略")
    parser.add_argument("--extensions", help="覆盖启用的扩展，逗号分隔（ridesharing,carsharing），空字符串表示不启用")
    parser.add_argument("--seeds", type=parse_seeds, help="以多个种子独立模拟，逗号分隔（simulate 阶段）")
    parser.add_argument("--jobs", type=int, default=1, help="多种子模拟的并行进程数")
    return parser.parse_args(argv)


def overrides_from(args) -> dict:
    overrides = {}
    if args.rescheduling is not None:
        overrides["rescheduling"] = args.rescheduling
    if args.extensions is not None:
        overrides["extensions"] = [name.strip() for name in args.extensions.split(",") if name.strip()]
    return overrides


def run(args) -> int:
    """
    执行一个阶段

    Returns:
        int: 退出码
    """
    overrides = overrides_from(args)
    if args.seeds and args.subcommand == "simulate":
        summaries = run_seeds(args.config, overrides, args.seeds, args.jobs)
        for seed, summary in summaries.items():
            logger.info(f"seed {seed}: {summary}")
        return 0

    config = Config(args.config)
    config.apply_overrides(seed=args.seed, **overrides)
    pipeline = Pipeline(config)
    if args.subcommand == "validate":
        pipeline.validate()
    elif args.subcommand == "synthesize":
        pipeline.synthesize()
    elif args.subcommand == "longterm":
        pipeline.longterm()
    elif args.subcommand == "simulate":
        pipeline.simulate()
    elif args.subcommand == "analyze":
        pipeline.analyze()
    else:
        pipeline.run_all()
    logger.info(f"{args.subcommand} finished")
    return 0


def setup_logging(config: Config, verbose: bool) -> None:
    log_config = config.get_logger_config()
    log_file = resolve_path(log_config.get("file", "logs/simulation.log"), config.base_dir)
    log_level = "DEBUG" if verbose else log_config.get("level", "INFO")
    rotation = log_config.get("max_size", 10485760)
    backup_count = log_config.get("backup_count", 5)
    log_format = log_config.get("format") or DEFAULT_LOG_FORMAT
    logger.remove()
    logger.add(sys.stderr, level=log_level, format=log_format)
    logger.add(log_file, level=log_level, rotation=rotation, retention=backup_count, format=log_format)


def main(argv=None) -> int:
    """
    主程序入口
    """
    args = parse_args(argv)
    config = Config(args.config)
    setup_logging(config, args.verbose)
    try:
        return run(args)
    except KeyboardInterrupt:
        logger.info("用户中断程序")
        return 1
    except BaseException as e:
        logger.error(f"{args.subcommand} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
