"""
Domain models for aslphono.

This package provides the vector math, direction label sets, keypoint roles,
skeleton frames and the sample records written to the 3D and phonological
datasets.
"""

from .base import DatasetModel, round_floats
from .direction import (
    EMPTY_DIRECTION,
    DirectionSet,
    canonical_direction_string,
    is_canonical_direction_string,
    parse_direction_string,
)
from .geometry import Vector3, cross_product, dot, euclidean_distance
from .keypoints import (
    Keypoint3D,
    KeypointRole,
    RoleTable,
    SkeletonFrame,
    empty_group,
    load_role_table,
)
from .records import (
    AttributeValue,
    FrameDocument,
    GroupDocument,
    PhonoFrame,
    PhonoSample,
    Sample3D,
    SampleMeta,
    SkippedSample,
)

__all__ = [
    # Base
    "DatasetModel",
    "round_floats",
    # Geometry
    "Vector3",
    "cross_product",
    "dot",
    "euclidean_distance",
    # Directions
    "DirectionSet",
    "EMPTY_DIRECTION",
    "canonical_direction_string",
    "is_canonical_direction_string",
    "parse_direction_string",
    # Keypoints
    "Keypoint3D",
    "KeypointRole",
    "RoleTable",
    "SkeletonFrame",
    "empty_group",
    "load_role_table",
    # Records
    "AttributeValue",
    "FrameDocument",
    "GroupDocument",
    "PhonoFrame",
    "PhonoSample",
    "Sample3D",
    "SampleMeta",
    "SkippedSample",
]
