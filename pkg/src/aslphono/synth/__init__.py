"""Synthetic corpora with known phonological attributes."""

from .generator import GeneratedSample, generate_sample, hand_points, palm_basis
from .script import (
    DEFAULT_MARGIN,
    HandScript,
    MotionScript,
    check_margin,
    random_script,
    unit_normal,
)

__all__ = [
    "DEFAULT_MARGIN",
    "GeneratedSample",
    "HandScript",
    "MotionScript",
    "check_margin",
    "generate_sample",
    "hand_points",
    "palm_basis",
    "random_script",
    "unit_normal",
]
