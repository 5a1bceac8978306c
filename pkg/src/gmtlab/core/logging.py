"""Logging setup for batch runs.

Runs are silent unless ``-v`` is given. Verbose runs log to a rich console
handler and to a daily rotated ``app.log`` under the working directory.
"""

import logging
import warnings
from logging.handlers import TimedRotatingFileHandler
from pathlib import Path

from rich.logging import RichHandler

from gmtlab.core.constants import CONFIG_LOG_DIR
from gmtlab.core.settings import settings

FILE_LOG_FORMAT = "%(asctime)s %(levelname)-8s %(name)s [%(filename)s:%(lineno)d] %(message)s"

# Third-party loggers capped at WARNING regardless of the configured level
NOISY_LOGGERS = ("matplotlib", "PIL", "networkx")


def _console_handler() -> logging.Handler:
    return RichHandler(show_path=True, rich_tracebacks=True, tracebacks_show_locals=False)


def _file_handler(log_dir: Path) -> logging.Handler | None:
    try:
        log_dir.mkdir(parents=True, exist_ok=True)
        handler = TimedRotatingFileHandler(
            log_dir / "app.log", when="midnight", backupCount=7, encoding="utf-8"
        )
    except OSError:
        return None
    handler.suffix = "%Y-%m-%d"
    handler.setFormatter(logging.Formatter(FILE_LOG_FORMAT))
    return handler


def configure_logging(show_logs: bool = False, working_dir: Path = Path.cwd()) -> None:
    """Install the root handlers for one run.

    Args:
        show_logs: Log to the console and to ``<working_dir>/.gmtlab/logs/app.log``.
            When False only a NullHandler is installed.
        working_dir: Directory the log directory is created under.
    """
    root = logging.getLogger()
    root.setLevel(settings.log_level)
    for handler in list(root.handlers):
        root.removeHandler(handler)

    for name in NOISY_LOGGERS:
        logging.getLogger(name).setLevel(logging.WARNING)
    warnings.filterwarnings("ignore", category=DeprecationWarning, module="networkx")

    if not show_logs:
        root.addHandler(logging.NullHandler())
        return

    root.addHandler(_console_handler())
    file_handler = _file_handler(working_dir / CONFIG_LOG_DIR)
    if file_handler is None:
        return
    root.addHandler(file_handler)
    logging.getLogger(__name__).info(f"Logging to {file_handler.baseFilename}")


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)
