"""3D skeleton reconstruction and normalization."""

from .config import FusionConfig
from .reconstruction import (
    NORMALIZED_BY_FRAME,
    NORMALIZED_BY_MEDIAN,
    frame_widths,
    fuse_frame,
    normalize_frame,
    normalize_sample,
    reconstruct_sample,
    shoulder_width,
)

__all__ = [
    "FusionConfig",
    "NORMALIZED_BY_FRAME",
    "NORMALIZED_BY_MEDIAN",
    "frame_widths",
    "fuse_frame",
    "normalize_frame",
    "normalize_sample",
    "reconstruct_sample",
    "shoulder_width",
]
