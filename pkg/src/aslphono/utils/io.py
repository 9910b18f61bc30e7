"""File and name helpers for dataset documents."""

import json
import re
import unicodedata
from pathlib import Path
from typing import Any


def sanitize_filename(title: str, max_length: int = 100) -> str:
    """Sanitize a string for use as a filename.

    Args:
        title: The string to sanitize
        max_length: Maximum length of the resulting filename (default 100)

    Returns:
        A safe filename string
    """
    # Normalize unicode characters (e.g., é -> e)
    normalized = unicodedata.normalize("NFKD", title)
    ascii_only = normalized.encode("ascii", "ignore").decode("ascii")

    replacements = {
        "/": "-",
        "\\": "-",
        ":": "-",
        "*": "",
        "?": "",
        '"': "",
        "<": "",
        ">": "",
        "|": "",
        "\n": " ",
        "\r": " ",
        "\t": " ",
        " ": "-",
    }
    for char, replacement in replacements.items():
        ascii_only = ascii_only.replace(char, replacement)

    sanitized = re.sub(r"[-]+", "-", ascii_only)
    sanitized = sanitized.strip(" -")

    if len(sanitized) > max_length:
        sanitized = sanitized[:max_length].rstrip(" -")

    if not sanitized:
        sanitized = "untitled"

    return sanitized


def dump_json(data: Any) -> str:
    """Serialize ``data`` the same way every time: 2-space indent, trailing newline."""
    return json.dumps(data, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def write_json(path: Path, data: Any) -> None:
    """Write ``data`` as JSON, creating parent directories."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_json(data), encoding="utf-8")


def read_json(path: Path) -> Any:
    """Read a JSON document."""
    with path.open(encoding="utf-8") as handle:
        return json.load(handle)
