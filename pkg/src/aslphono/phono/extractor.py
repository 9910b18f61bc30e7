"""Per-frame phonological attributes of a normalized 3D sample."""

import logging

from ..exceptions import DegenerateMouth, DegeneratePlane, InvalidAnnotation
from ..ingest.annotations import AnnotationRecord, HandSide
from ..models.constants import FACE, HANDSHAPE_SCORE, LEFT_HAND, NONE_VALUE, RIGHT_HAND
from ..models.direction import canonical_direction_string
from ..models.keypoints import SkeletonFrame
from ..models.records import AttributeValue, PhonoFrame, PhonoSample, Sample3D
from .attributes import (
    assign_handshapes,
    attribute_score,
    classify_direction,
    motion_vector,
    mouth_opening,
    palm_normal,
)
from .config import PhonoConfig

logger = logging.getLogger(__name__)

MISSING_DIRECTION = AttributeValue(value=NONE_VALUE, score=0.0)
MISSING_MOUTH = AttributeValue(value=0.0, score=0.0)


def hand_group(side: HandSide) -> str:
    return RIGHT_HAND if side == "right" else LEFT_HAND


def orientation_attribute(
    frame: SkeletonFrame, side: HandSide, cfg: PhonoConfig
) -> AttributeValue:
    """Palm orientation of one hand in one frame."""
    group = hand_group(side)
    roles = cfg.hand_roles
    indices = (roles.wrist, roles.little_base, roles.index_base)
    scores = [frame.score(group, index) for index in indices]
    score = attribute_score(scores)
    if score == 0.0:
        return MISSING_DIRECTION
    W, L, I = (frame.point(group, index) for index in indices)  # noqa: E741
    try:
        normal = palm_normal(W, L, I, side)
    except DegeneratePlane as err:
        logger.debug(f"Frame {frame.frame_index}: {err}")
        return MISSING_DIRECTION
    direction = classify_direction(normal, cfg.threshold_k)
    return AttributeValue(value=canonical_direction_string(direction), score=score)


def movement_attribute(
    frame: SkeletonFrame,
    previous: SkeletonFrame | None,
    side: HandSide,
    cfg: PhonoConfig,
) -> AttributeValue:
    """Hand movement between the previous frame and this one."""
    if previous is None:
        return MISSING_DIRECTION
    group = hand_group(side)
    index = cfg.hand_roles.middle_base
    score = attribute_score([frame.score(group, index), previous.score(group, index)])
    if score == 0.0:
        return MISSING_DIRECTION
    motion = motion_vector(frame.point(group, index), previous.point(group, index))
    direction = classify_direction(motion, cfg.threshold_k)
    return AttributeValue(value=canonical_direction_string(direction), score=score)


def mouth_attribute(frame: SkeletonFrame, cfg: PhonoConfig) -> AttributeValue:
    """Mouth opening ratio in one frame."""
    lips = cfg.lip_roles
    indices = (
        lips.labiale_superius,
        lips.labiale_inferius,
        lips.cheilion_right,
        lips.cheilion_left,
    )
    score = attribute_score([frame.score(FACE, index) for index in indices])
    if score == 0.0:
        return MISSING_MOUTH
    LS, LI, CH_r, CH_l = (frame.point(FACE, index) for index in indices)
    try:
        ratio = mouth_opening(LS, LI, CH_r, CH_l)
    except DegenerateMouth as err:
        logger.debug(f"Frame {frame.frame_index}: {err}")
        return MISSING_MOUTH
    return AttributeValue(value=ratio, score=score)


def _handshape_column(
    n_frames: int, initial: str | None, final: str | None
) -> list[AttributeValue]:
    if not initial or not final:
        return [AttributeValue(value=NONE_VALUE, score=0.0)] * n_frames
    return [
        AttributeValue(value=code, score=HANDSHAPE_SCORE)
        for code in assign_handshapes(n_frames, initial, final)
    ]


def extract_phono(
    sample: Sample3D, rec: AnnotationRecord, cfg: PhonoConfig
) -> PhonoSample:
    """Compute every phonological attribute for every frame of a sample.

    Degenerate geometry degrades the single attribute (value ``none`` or
    0.0, score 0) instead of failing the sample.

    Args:
        sample: Normalized 3D sample
        rec: Annotation of the same sign occurrence
        cfg: Extraction configuration

    Returns:
        The PhonoSample, with as many frames as ``sample``

    Raises:
        InvalidAnnotation: If the annotation does not describe this sample
    """
    if sample.meta != rec.meta:
        error_msg = (
            f"Annotation {rec.sample_id} does not match sample {sample.meta.sample_id}"
        )
        raise InvalidAnnotation(error_msg)
    n_frames = len(sample.frames)
    span = rec.meta.frame_end - rec.meta.frame_start + 1
    if n_frames > span:
        error_msg = (
            f"{rec.sample_id}: {n_frames} frames cannot come from a "
            f"{span}-frame segment"
        )
        raise InvalidAnnotation(error_msg)

    dh, ndh = rec.dominant_side, rec.non_dominant_side
    dh_shapes = _handshape_column(n_frames, rec.initial_handshape, rec.final_handshape)
    ndh_shapes = _handshape_column(
        n_frames, rec.ndh_initial_handshape, rec.ndh_final_handshape
    )

    frames = []
    previous: SkeletonFrame | None = None
    for position, frame in enumerate(sample.frames):
        frames.append(
            PhonoFrame(
                frame_index=frame.frame_index,
                dh_handshape=dh_shapes[position],
                ndh_handshape=ndh_shapes[position],
                dh_orientation=orientation_attribute(frame, dh, cfg),
                ndh_orientation=orientation_attribute(frame, ndh, cfg),
                dh_movement=movement_attribute(frame, previous, dh, cfg),
                ndh_movement=movement_attribute(frame, previous, ndh, cfg),
                mouth_opening=mouth_attribute(frame, cfg),
            )
        )
        previous = frame
    return PhonoSample(meta=sample.meta, frames=frames)
