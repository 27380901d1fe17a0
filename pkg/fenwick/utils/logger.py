"""Logging utilities for the compact Fenwick toolkit."""

import sys
import time
from pathlib import Path
from typing import Optional, Union

from loguru import logger


def setup_logging(
    log_level: str = "INFO", log_dir: Optional[Union[str, Path]] = "logs"
) -> Optional[Path]:
    """
    Set up console logging and, unless log_dir is None, a timestamped log file

    Args:
        log_level: The logging level (default: "INFO")
        log_dir: Directory for run logs; None disables the file sink

    Returns:
        Path of the log file, or None when no file sink was added
    """
    log_level = log_level.upper()

    # Remove default handler
    logger.remove()

    logger.add(
        sys.stderr,
        level=log_level,
        format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> "
        "| <level>{level: <8}</level> | <cyan>{name}</cyan>:"
        "<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>",
    )

    if log_dir is None:
        logger.debug("Logging initialized without a log file")
        return None

    logs_dir = Path(log_dir)
    logs_dir.mkdir(parents=True, exist_ok=True)
    timestamp = time.strftime("%Y%m%d-%H%M%S")
    log_file = logs_dir / f"fenwick_run_{timestamp}.log"

    logger.add(
        log_file,
        rotation="10 MB",
        retention="1 week",
        level=log_level,
        format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} "
        "| {name}:{function}:{line} - {message}",
    )

    logger.info(f"Logging initialized. Log file: {log_file}")
    return log_file
