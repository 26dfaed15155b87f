"""Loguru sink configuration shared by the CLI and the HTTP app"""
import sys
from typing import Optional

from loguru import logger


def configure_logging(level: str = "INFO", json_logs: bool = False, log_file: Optional[str] = None) -> None:
    """Route all records to stderr (and optionally a file); stdout stays reserved for reports"""
    logger.remove()
    logger.add(sys.stderr, level=level, serialize=json_logs, backtrace=False, diagnose=False)
    if log_file:
        logger.add(log_file, level=level, serialize=json_logs, rotation="10 MB")
