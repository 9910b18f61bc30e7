"""3D skeleton reconstruction from perpendicular views, and shoulder-width
normalization."""

import logging
from collections.abc import Sequence
from dataclasses import replace

import numpy as np

from ..exceptions import (
    DegenerateWidth,
    MissingShoulder,
    UnnormalizableSample,
    WrongCardinality,
)
from ..ingest.annotations import AnnotationRecord
from ..ingest.sequences import FramePair
from ..ingest.views import PSCORE, PX, PY, ViewFrame2D
from ..models.constants import BODY, KEYPOINT_GROUPS
from ..models.geometry import euclidean_distance
from ..models.keypoints import SCORE, SkeletonFrame
from ..models.records import Sample3D
from .config import FusionConfig

logger = logging.getLogger(__name__)

NORMALIZED_BY_FRAME = "frame"
NORMALIZED_BY_MEDIAN = "median"


def _fuse_group(
    front: np.ndarray, side: np.ndarray, group: str, cfg: FusionConfig
) -> np.ndarray:
    if front.shape != side.shape:
        error_msg = (
            f"{group}: frontal view has {front.shape[0]} keypoints, "
            f"side view has {side.shape[0]}"
        )
        raise WrongCardinality(error_msg)
    fused = np.empty((front.shape[0], 4), dtype=np.float64)
    fused[:, 0] = front[:, PX]
    fused[:, 1] = front[:, PY]
    fused[:, 2] = side[:, PX] * (cfg.z_scale * cfg.z_sign)
    fused[:, SCORE] = np.minimum(front[:, PSCORE], side[:, PSCORE])
    missing = (
        (front[:, PSCORE] < cfg.min_view_score)
        | (side[:, PSCORE] < cfg.min_view_score)
        | (fused[:, SCORE] == 0.0)
    )
    fused[missing] = 0.0
    return fused


def _y_discrepancy(front: ViewFrame2D, side: ViewFrame2D) -> float | None:
    gaps = []
    for group in KEYPOINT_GROUPS:
        f, s = front.group(group), side.group(group)
        both = (f[:, PSCORE] > 0) & (s[:, PSCORE] > 0)
        gaps.append(np.abs(f[both, PY] - s[both, PY]))
    joined = np.concatenate(gaps)
    return float(joined.mean()) if joined.size else None


def fuse_frame(
    front: ViewFrame2D, side: ViewFrame2D, cfg: FusionConfig
) -> SkeletonFrame:
    """Combine a frontal and a side frame into one unnormalized 3D frame.

    x and y come from the frontal view; z is the side view's x scaled by
    ``z_scale`` and flipped when the side camera stands at the signer's
    left, so +z always points from the body toward the frontal camera.
    The fused score is the smaller of the two view scores.

    Args:
        front: Frontal-view frame
        side: Side-view frame of the same instant
        cfg: Fusion configuration

    Returns:
        A SkeletonFrame in pixel units
    """
    if cfg.log_y_discrepancy and logger.isEnabledFor(logging.DEBUG):
        gap = _y_discrepancy(front, side)
        if gap is not None:
            logger.debug(
                f"Frame {front.frame_index}: mean |y_front - y_side| = {gap:.3f}"
            )
    groups = {
        group: _fuse_group(front.group(group), side.group(group), group, cfg)
        for group in KEYPOINT_GROUPS
    }
    return SkeletonFrame(frame_index=front.frame_index, **groups)


def shoulder_width(frame: SkeletonFrame, cfg: FusionConfig | None = None) -> float:
    """Distance between the shoulders in the frame's current units.

    Raises:
        MissingShoulder: If either shoulder has score 0
    """
    cfg = cfg or FusionConfig()
    left, right = cfg.left_shoulder_index, cfg.right_shoulder_index
    if frame.score(BODY, left) == 0.0 or frame.score(BODY, right) == 0.0:
        error_msg = f"Frame {frame.frame_index}: shoulder keypoint missing"
        raise MissingShoulder(error_msg)
    return euclidean_distance(frame.point(BODY, left), frame.point(BODY, right))


def normalize_frame(
    frame: SkeletonFrame,
    width: float,
    eps: float,
    *,
    normalized_by: str = NORMALIZED_BY_FRAME,
) -> SkeletonFrame:
    """Divide every coordinate by the shoulder width.

    Missing keypoints stay at the origin and scores are unchanged.

    Raises:
        DegenerateWidth: If ``width <= eps``
    """
    if not width > eps:
        error_msg = f"Frame {frame.frame_index}: shoulder width {width} <= {eps}"
        raise DegenerateWidth(error_msg)
    groups = {}
    for group in KEYPOINT_GROUPS:
        values = frame.group(group).copy()
        values[:, :3] /= width
        groups[group] = values
    return frame.with_groups(groups, normalized_by=normalized_by)


def frame_widths(
    frames: Sequence[SkeletonFrame], cfg: FusionConfig
) -> list[float | None]:
    """Usable shoulder width of each frame; None where missing or degenerate."""
    widths: list[float | None] = []
    for frame in frames:
        try:
            width = shoulder_width(frame, cfg)
        except MissingShoulder:
            widths.append(None)
            continue
        widths.append(width if width > cfg.epsilon_width else None)
    return widths


def normalize_sample(
    frames: Sequence[SkeletonFrame], cfg: FusionConfig
) -> list[SkeletonFrame]:
    """Normalize every frame of a sample by its shoulder width.

    Frames without a usable width fall back to the median of the sample's
    valid widths.

    Raises:
        UnnormalizableSample: If no frame has a usable width
    """
    widths = frame_widths(frames, cfg)
    valid = [w for w in widths if w is not None]
    if not valid:
        error_msg = f"No frame out of {len(frames)} has a usable shoulder width"
        raise UnnormalizableSample(error_msg)
    median = float(np.median(valid))
    normalized = []
    for frame, width in zip(frames, widths, strict=True):
        if width is None:
            logger.debug(
                f"Frame {frame.frame_index}: using median shoulder width {median:.3f}"
            )
            normalized.append(
                normalize_frame(
                    frame, median, cfg.epsilon_width, normalized_by=NORMALIZED_BY_MEDIAN
                )
            )
        else:
            normalized.append(normalize_frame(frame, width, cfg.epsilon_width))
    return normalized


def median_width_frames(frames: Sequence[SkeletonFrame]) -> int:
    """Number of frames normalized by the sample's median shoulder width."""
    return sum(frame.normalized_by == NORMALIZED_BY_MEDIAN for frame in frames)


def reconstruct_sample(
    pairs: Sequence[FramePair],
    rec: AnnotationRecord,
    cfg: FusionConfig,
    sizes: dict[str, int] | None = None,
) -> Sample3D:
    """Fuse paired views and normalize them into a Sample3D.

    Frames are renumbered 0..n-1 in downsampled order; the source frame of
    frame ``i`` is ``frame_start + i * stride``.

    Raises:
        WrongCardinality: If a fused group does not have the size in ``sizes``
            (the default role table when omitted)
    """
    fused = [fuse_frame(front, side, cfg) for front, side in pairs]
    for frame in fused:
        frame.check_sizes(sizes)
    frames = [
        replace(frame, frame_index=position)
        for position, frame in enumerate(normalize_sample(fused, cfg))
    ]
    by_median = median_width_frames(frames)
    if by_median:
        logger.warning(
            f"{rec.sample_id}: {by_median} of {len(frames)} frames normalized "
            "by the median shoulder width"
        )
    missing = sum(
        int((frame.group(group)[:, SCORE] == 0).sum())
        for frame in frames
        for group in KEYPOINT_GROUPS
    )
    if missing:
        logger.debug(
            f"{rec.sample_id}: {missing} missing joints across {len(frames)} frames"
        )
    return Sample3D(meta=rec.meta, frames=tuple(frames))
