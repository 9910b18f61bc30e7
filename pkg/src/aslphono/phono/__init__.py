"""Phonological attribute extraction."""

from .attributes import (
    assign_handshapes,
    attribute_score,
    classify_direction,
    motion_vector,
    mouth_opening,
    palm_normal,
)
from .config import HandRoles, LipRoles, PhonoConfig
from .extractor import (
    extract_phono,
    hand_group,
    mouth_attribute,
    movement_attribute,
    orientation_attribute,
)

__all__ = [
    "HandRoles",
    "LipRoles",
    "PhonoConfig",
    "assign_handshapes",
    "attribute_score",
    "classify_direction",
    "extract_phono",
    "hand_group",
    "motion_vector",
    "mouth_attribute",
    "mouth_opening",
    "movement_attribute",
    "orientation_attribute",
    "palm_normal",
]
