"""Logging utilities for aslphono.

Routes every record through a single stream handler on the root logger so
library and pipeline messages share one format.
"""

import logging
import sys
from typing import TextIO

APP_LOGGER_NAME = "aslphono"


def setup_logging(
    level: int = logging.WARNING, stream: TextIO = sys.stderr
) -> logging.Logger:
    """
    Configure aslphono logging.

    Args:
        level: The minimum logging level to display (default: WARNING)
        stream: The stream to write logs to (default: sys.stderr)

    Returns:
        The configured application logger
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    # Remove existing handlers to prevent duplication
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    handler = logging.StreamHandler(stream)
    formatter = logging.Formatter("%(levelname)s - %(name)s - %(message)s")
    handler.setFormatter(formatter)
    root_logger.addHandler(handler)

    logger = logging.getLogger(APP_LOGGER_NAME)
    logger.setLevel(level)
    return logger


def level_from_verbosity(verbose: int, *, very_verbose: bool, verbose_env: bool) -> int:
    """Pick a logging level from ``-v`` count and environment flags.

    Args:
        verbose: Number of ``-v`` flags given on the command line
        very_verbose: Whether ``ASLPHONO_VERY_VERBOSE`` is truthy
        verbose_env: Whether ``ASLPHONO_VERBOSE`` is truthy

    Returns:
        A ``logging`` level constant
    """
    if verbose == 1:
        return logging.INFO
    if verbose >= 2:  # -vv or more
        return logging.DEBUG
    if very_verbose:
        return logging.DEBUG
    if verbose_env:
        return logging.INFO
    return logging.WARNING
