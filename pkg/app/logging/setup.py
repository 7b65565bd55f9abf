"""Loguru sink configuration shared by the CLI and scripts."""

import sys

from loguru import logger

CONSOLE_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan> - <level>{message}</level>"
)


def configure_logging(level: str = "INFO", fmt: str = "console") -> None:
    """
    Replace loguru's default sink with a single stderr sink.

    Args:
        level: Minimum level name
        fmt: "console" for colored lines, "json" for one serialized record per line
    """
    logger.remove()
    if fmt == "json":
        logger.add(sys.stderr, level=level.upper(), serialize=True)
    else:
        logger.add(sys.stderr, level=level.upper(), format=CONSOLE_FORMAT)
