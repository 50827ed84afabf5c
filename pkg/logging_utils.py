#!/usr/bin/env python3
"""Logging helpers for the orthogonal polynomial package."""

from __future__ import annotations

import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path


def get_logger(name: str) -> logging.Logger:
    """Return a logger with a stderr handler and an optional rotating file.

    Parameters
    ----------
    name: str
        Name for the logger.

    The level comes from ``OPQ_LOG_LEVEL`` (default ``INFO``). When
    ``OPQ_LOG_FILE`` is set, a file handler with a 10 MB limit and three
    backups is attached as well. stdout is left alone because the CLI
    writes its tables there. Handlers are added only once per logger.
    """
    logger = logging.getLogger(name)
    if logger.handlers:
        return logger

    logger.setLevel(os.getenv("OPQ_LOG_LEVEL", "INFO").upper())
    logger.propagate = False

    fmt = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )

    console = logging.StreamHandler(sys.stderr)
    console.setFormatter(fmt)
    logger.addHandler(console)

    log_file = os.getenv("OPQ_LOG_FILE")
    if log_file:
        file_handler = RotatingFileHandler(
            Path(log_file), maxBytes=10 * 1024 * 1024, backupCount=3
        )
        file_handler.setFormatter(fmt)
        logger.addHandler(file_handler)

    return logger


def set_level(level: str) -> None:
    """Apply ``level`` to every logger already created by :func:`get_logger`."""
    for name in list(logging.root.manager.loggerDict):
        logger = logging.getLogger(name)
        if logger.handlers and not logger.propagate:
            logger.setLevel(level.upper())
