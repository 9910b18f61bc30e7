"""Environment variable utility functions for aslphono."""

import os

ENV_PREFIX = "ASLPHONO_"


def env_name(name: str) -> str:
    """Return the prefixed environment variable name for a setting.

    Args:
        name: Setting name without prefix (e.g. ``Z_SCALE``)

    Returns:
        The full variable name (e.g. ``ASLPHONO_Z_SCALE``)
    """
    return f"{ENV_PREFIX}{name.upper()}"


def is_env_truthy(env_var_name: str, default: str = "") -> bool:
    """Check if environment variable is set to a standard truthy value.

    Considers 'true', '1', 'yes' as truthy values (case-insensitive).

    Args:
        env_var_name: Name of the environment variable to check
        default: Default value if environment variable is not set

    Returns:
        True if the environment variable is set to a truthy value, False otherwise
    """
    return os.getenv(env_var_name, default).lower() in ("true", "1", "yes")


def get_env_float(env_var_name: str, default: float) -> float:
    """Read a float from the environment.

    Args:
        env_var_name: Name of the environment variable to read
        default: Value used when the variable is unset or blank

    Returns:
        The parsed value

    Raises:
        ValueError: If the variable is set but is not a finite number
    """
    raw = os.getenv(env_var_name)
    if raw is None or not raw.strip():
        return default
    try:
        value = float(raw)
    except ValueError:
        error_msg = f"{env_var_name} must be a number, got {raw!r}"
        raise ValueError(error_msg) from None
    if value != value or value in (float("inf"), float("-inf")):
        error_msg = f"{env_var_name} must be finite, got {raw!r}"
        raise ValueError(error_msg)
    return value


def get_env_int(env_var_name: str, default: int) -> int:
    """Read an integer from the environment.

    Args:
        env_var_name: Name of the environment variable to read
        default: Value used when the variable is unset or blank

    Returns:
        The parsed value

    Raises:
        ValueError: If the variable is set but is not an integer
    """
    raw = os.getenv(env_var_name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        error_msg = f"{env_var_name} must be an integer, got {raw!r}"
        raise ValueError(error_msg) from None
