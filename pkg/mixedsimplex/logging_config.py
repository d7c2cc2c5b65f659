from __future__ import annotations

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

from mixedsimplex import config

LOG_FORMAT = "%(asctime)s %(levelname)-5s [%(name)s] %(message)s"

CONTEXT_LOGGERS = (
    "cli",
    "config",
    "simplex",
    "transform",
    "sampler",
    "distribution",
    "info",
    "automata",
    "figure",
)


def setup_logging(
    log_file: Optional[str] = None, level: int | str | None = None
) -> None:
    """Configure the package loggers.

    - Console output goes to stderr; stdout carries command results only.
    - When a log file is given (or ``MIXEDSIMPLEX_LOG_FILE`` is set) a
      rotating file handler is attached and its directory created.
    - Calling it again never stacks duplicate handlers.
    """
    if log_file is None:
        log_file = config.LOG_FILE
    if level is None:
        level = config.LOG_LEVEL
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.WARNING

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    formatter = logging.Formatter(LOG_FORMAT)

    if log_file is not None:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        for h in root_logger.handlers:
            if isinstance(h, RotatingFileHandler) and getattr(
                h, "baseFilename", None
            ) == str(log_path.resolve()):
                h.setLevel(level)
                break
        else:
            file_handler = RotatingFileHandler(
                str(log_path), maxBytes=10 * 1024 * 1024, backupCount=3
            )
            file_handler.setLevel(level)
            file_handler.setFormatter(formatter)
            root_logger.addHandler(file_handler)

    for h in root_logger.handlers:
        if getattr(h, "_mixedsimplex_console", False):
            h.setLevel(level)
            h.setStream(sys.stderr)
            break
    else:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(level)
        console_handler.setFormatter(formatter)
        console_handler._mixedsimplex_console = True  # type: ignore[attr-defined]
        root_logger.addHandler(console_handler)

    for name in CONTEXT_LOGGERS:
        logging.getLogger(name).setLevel(level)
