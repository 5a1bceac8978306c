"""Main CLI application entry point."""

import argparse
import asyncio
import sys
from pathlib import Path

from pydantic import ValidationError

from gmtlab.cli.bootstrap.timer import enable_timer, print_total, timer
from gmtlab.cli.core.context import Context
from gmtlab.cli.dispatchers.commands import COMMAND_HELP, HANDLERS, CommandDispatcher
from gmtlab.cli.theme import console
from gmtlab.configs import ExperimentConfig, preset_path
from gmtlab.core.constants import APP_NAME, EXIT_INPUT_ERROR
from gmtlab.core.logging import configure_logging, get_logger


def _flag_names(key: str) -> list[str]:
    names = [f"--{key}"]
    if "_" in key:
        names.append(f"--{key.replace('_', '-')}")
    return names


def create_parser() -> argparse.ArgumentParser:
    """Create command line argument parser.

    Every ExperimentConfig key gets a ``--<key>`` flag that overrides the
    config file.
    """
    commands = "\n".join(f"  {name:<21}{text}" for name, text in COMMAND_HELP.items())
    parser = argparse.ArgumentParser(
        prog=APP_NAME,
        description="Batch experiments on discrete sets of finite perimeter",
        epilog=f"commands:\n{commands}",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )

    parser.add_argument("command", type=str, help="Command to run (see below)")
    parser.add_argument(
        "-c",
        "--config",
        type=Path,
        default=None,
        help="Config file: flat key = value, or YAML for .yml/.yaml",
    )
    parser.add_argument(
        "-p",
        "--preset",
        type=str,
        default=None,
        help="Bundled config to start from (ignored when --config is given)",
    )
    parser.add_argument(
        "-t",
        "--timer",
        action="store_true",
        help="Print the wall time of each phase",
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        help="Enable verbose logging to console and .gmtlab/logs/app.log",
    )

    overrides = parser.add_argument_group("config overrides")
    for key, info in ExperimentConfig.model_fields.items():
        overrides.add_argument(
            *_flag_names(key),
            dest=key,
            type=str,
            default=None,
            metavar=key.upper(),
            help=info.description,
        )
    return parser


async def load_config(args: argparse.Namespace) -> ExperimentConfig:
    """Config file (or preset), then flag overrides on top."""
    if args.config is not None:
        config = await ExperimentConfig.from_file(args.config)
    elif args.preset is not None:
        config = await ExperimentConfig.from_file(preset_path(args.preset))
    else:
        config = ExperimentConfig()
    overrides = {key: getattr(args, key) for key in ExperimentConfig.model_fields}
    return config.with_overrides(overrides)


async def main(argv: list[str] | None = None) -> int:
    """Main CLI entry point."""
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    configure_logging(show_logs=args.verbose, working_dir=Path.cwd())
    enable_timer(args.timer)
    logger = get_logger(__name__)

    if args.command not in HANDLERS:
        parser.print_usage(sys.stderr)
        console.print_error(
            f"Unknown command '{args.command}'. Available: {', '.join(HANDLERS)}"
        )
        return EXIT_INPUT_ERROR

    try:
        with timer("Load config"):
            config = await load_config(args)
        context = await Context.create(args.command, config)
        with timer(args.command):
            code = await CommandDispatcher(context).dispatch(args.command)
        print_total()
        return code
    except ValidationError as e:
        console.print_error(f"Invalid config: {e}")
        return EXIT_INPUT_ERROR
    except (ValueError, FileNotFoundError) as e:
        console.print_error(str(e))
        logger.debug("Input error", exc_info=True)
        return EXIT_INPUT_ERROR
    except Exception as e:
        console.print_error(f"Unexpected error: {e}")
        logger.exception("CLI error")
        return EXIT_INPUT_ERROR


def cli():
    """Synchronous CLI entry point for setuptools."""
    try:
        exit_code = asyncio.run(main())
        sys.exit(exit_code)
    except KeyboardInterrupt:
        sys.exit(EXIT_INPUT_ERROR)


if __name__ == "__main__":
    cli()
