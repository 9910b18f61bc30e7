"""
Utility functions for aslphono.
This package provides environment, logging and file helpers used throughout
the codebase.
"""

from .env import env_name, get_env_float, get_env_int, is_env_truthy
from .io import dump_json, read_json, sanitize_filename, write_json
from .logging import level_from_verbosity, setup_logging

__all__ = [
    "dump_json",
    "env_name",
    "get_env_float",
    "get_env_int",
    "is_env_truthy",
    "level_from_verbosity",
    "read_json",
    "sanitize_filename",
    "setup_logging",
    "write_json",
]
