"""Geometry of the phonological attributes: palm orientation, hand movement,
handshape assignment and mouth opening."""

import math
from collections.abc import Sequence
from typing import Literal

from ..exceptions import DegenerateMouth, DegeneratePlane
from ..models.constants import (
    BODY_DIRECTION,
    DEGENERATE_TOLERANCE,
    DOWN,
    FRONT,
    LEFT,
    RIGHT,
    UP,
)
from ..models.direction import DirectionSet
from ..models.geometry import Vector3, cross_product, euclidean_distance


def palm_normal(
    W: Vector3,
    L: Vector3,
    I: Vector3,  # noqa: E741
    side: Literal["left", "right"],
) -> Vector3:
    """Normal of the palm plane through wrist, little base and index base.

    Left palm: ``WI x WL``; right palm: ``WL x WI``. The two differ only in
    sign for the same three points.

    Raises:
        DegeneratePlane: If the points are coincident or collinear
    """
    wl = L - W
    wi = I - W
    if side == "left":
        normal = cross_product(wi, wl)
    elif side == "right":
        normal = cross_product(wl, wi)
    else:
        error_msg = f"side must be 'left' or 'right', got {side!r}"
        raise ValueError(error_msg)
    if normal.norm() < DEGENERATE_TOLERANCE:
        error_msg = f"Palm keypoints of the {side} hand do not span a plane"
        raise DegeneratePlane(error_msg)
    return normal


def classify_direction(v: Vector3, k: float) -> DirectionSet:
    """Label each axis whose component strictly exceeds the threshold.

    x < -k: right, x > k: left; y < -k: up, y > k: down;
    z < -k: body, z > k: front. A component equal to +/-k gets no label.
    """
    if not k > 0:
        error_msg = f"Threshold must be > 0, got {k}"
        raise ValueError(error_msg)
    x = RIGHT if v.x < -k else LEFT if v.x > k else None
    y = UP if v.y < -k else DOWN if v.y > k else None
    z = BODY_DIRECTION if v.z < -k else FRONT if v.z > k else None
    return DirectionSet(x=x, y=y, z=z)


def motion_vector(M_t: Vector3, M_prev: Vector3) -> Vector3:
    """Displacement of the middle-finger base between consecutive frames."""
    return M_t - M_prev


def assign_handshapes(n_frames: int, initial: str, final: str) -> list[str]:
    """Give the first half of the frames the initial handshape, the rest the final one.

    An odd middle frame belongs to the first half.
    """
    if n_frames < 1:
        error_msg = f"n_frames must be >= 1, got {n_frames}"
        raise ValueError(error_msg)
    first_half = math.ceil(n_frames / 2)
    return [initial] * first_half + [final] * (n_frames - first_half)


def mouth_opening(LS: Vector3, LI: Vector3, CH_r: Vector3, CH_l: Vector3) -> float:
    """Vermilion height over mouth width: ``d(LS, LI) / d(CH_r, CH_l)``.

    Raises:
        DegenerateMouth: If the mouth corners coincide
    """
    width = euclidean_distance(CH_r, CH_l)
    if width <= DEGENERATE_TOLERANCE:
        error_msg = f"Mouth width {width} is too small"
        raise DegenerateMouth(error_msg)
    return euclidean_distance(LS, LI) / width


def attribute_score(involved: Sequence[float]) -> float:
    """Mean score of the keypoints an attribute was computed from.

    Any missing keypoint (score 0) makes the whole attribute untrusted.
    """
    if not involved:
        error_msg = "attribute_score needs at least one keypoint score"
        raise ValueError(error_msg)
    if any(score == 0.0 for score in involved):
        return 0.0
    return min(1.0, math.fsum(involved) / len(involved))
