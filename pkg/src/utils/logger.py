"""Logging configuration for the analysis toolkit."""

import logging
import sys
from pathlib import Path
from typing import Optional

from config.settings import settings


def setup_logger(
    name: str, log_file: Optional[str] = None, level: Optional[str] = None
) -> logging.Logger:
    """
    Set up a logger writing to stderr and an optional file.

    Reports go to stdout, so console logging stays on stderr.

    Args:
        name: Logger name
        log_file: Optional log file path (defaults to settings.log_file)
        level: Optional log level override

    Returns:
        Configured logger instance
    """
    logger = logging.getLogger(name)
    log_level = getattr(logging, (level or settings.log_level).upper())
    logger.setLevel(log_level)

    logger.handlers.clear()

    formatter = logging.Formatter(
        fmt="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(log_level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    target = log_file or settings.log_file
    if target:
        log_path = Path(target)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(target)
        file_handler.setLevel(log_level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    logger.propagate = False

    return logger


def set_global_level(level: str) -> None:
    """Change the level of every logger created through setup_logger."""
    log_level = getattr(logging, level.upper())
    for logger in logging.Logger.manager.loggerDict.values():
        if isinstance(logger, logging.Logger) and logger.handlers:
            logger.setLevel(log_level)
            for handler in logger.handlers:
                handler.setLevel(log_level)
