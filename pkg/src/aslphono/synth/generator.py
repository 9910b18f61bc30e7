"""Forward model turning a motion script into dual-view pose frames.

Positions are built in shoulder-width units with the shoulders at
``x = -0.5`` (signer's right) and ``x = +0.5``, ``+y`` pointing down and
``+z`` pointing toward the frontal camera. They are then projected into the
frontal view as ``(x, y)`` and into the side view as ``(z, y)``.
"""

import logging
import math
from typing import NamedTuple

import numpy as np

from ..fuse.config import FusionConfig
from ..ingest.annotations import AnnotationRecord, HandSide
from ..ingest.sequences import frame_stride
from ..ingest.views import ViewFrame2D
from ..models.constants import (
    BODY,
    DEFAULT_SOURCE_FPS,
    DEFAULT_TARGET_FPS,
    FACE,
    FLOAT_PRECISION,
    FRONTAL,
    HANDSHAPE_SCORE,
    KEYPOINT_GROUPS,
    LEFT_HAND,
    NONE_VALUE,
    RIGHT_HAND,
    SIDE,
)
from ..models.direction import canonical_direction_string
from ..models.geometry import Vector3
from ..models.keypoints import RoleTable, load_role_table
from ..models.records import AttributeValue, PhonoFrame, PhonoSample, SampleMeta
from ..phono.attributes import assign_handshapes, attribute_score, classify_direction
from ..phono.config import HandRoles, PhonoConfig
from .script import (
    DEFAULT_MARGIN,
    LEFT_HAND_BASE,
    RIGHT_HAND_BASE,
    HandScript,
    MotionScript,
    unit_normal,
)

logger = logging.getLogger(__name__)

PALM_SPAN = 1.0
MOUTH_WIDTH = 0.2
MOUTH_CENTER = np.array([0.0, -0.8, 0.25])
FACE_CENTER = np.array([0.0, -1.0, 0.2])
FACE_RADIUS = 0.3
MIN_SCORE, MAX_SCORE = 0.6, 1.0

HAND_GROUPS: dict[str, str] = {"right": RIGHT_HAND, "left": LEFT_HAND}
HAND_BASES: dict[str, Vector3] = {"right": RIGHT_HAND_BASE, "left": LEFT_HAND_BASE}

Keyframe = dict[str, np.ndarray]


class GeneratedSample(NamedTuple):
    """Full-rate views, their annotation, and the attributes they must yield."""

    frontal: list[ViewFrame2D]
    side: list[ViewFrame2D]
    record: AnnotationRecord
    expected: PhonoSample


def palm_basis(unit: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal ``u, v`` spanning the plane normal to ``unit``, ``u x v = unit``."""
    if abs(unit[2]) > 0.9:
        helper = np.array([1.0, 0.0, 0.0])
    else:
        helper = np.array([0.0, 0.0, 1.0])
    u = helper - np.dot(helper, unit) * unit
    u /= np.linalg.norm(u)
    v = np.cross(unit, u)
    return u, v


def hand_points(
    middle_base: np.ndarray,
    unit: np.ndarray,
    side: str,
    size: int,
    roles: HandRoles,
) -> np.ndarray:
    """Hand keypoints whose palm normal (for ``side``) equals ``unit``.

    Only wrist, little base, index base and middle base are placed
    deliberately; the other joints fill in around the palm.
    """
    u, v = palm_basis(unit)
    to_little = PALM_SPAN * u
    to_index = PALM_SPAN * v if side == "right" else -PALM_SPAN * v
    wrist = middle_base - 0.5 * (to_little + to_index)
    points = np.array(
        [wrist + (j / size) * (middle_base - wrist) + 0.05 * unit for j in range(size)]
    )
    points[roles.wrist] = wrist
    points[roles.little_base] = wrist + to_little
    points[roles.index_base] = wrist + to_index
    points[roles.middle_base] = middle_base
    return points


def body_points(size: int, cfg: FusionConfig) -> np.ndarray:
    points = np.array(
        [[((i % 5) - 2) * 0.2, 0.3 * (i // 5) - 0.6, 0.0] for i in range(size)]
    )
    points[cfg.right_shoulder_index] = (-0.5, 0.0, 0.0)
    points[cfg.left_shoulder_index] = (0.5, 0.0, 0.0)
    return points


def face_points(size: int, ratio: float, cfg: PhonoConfig) -> np.ndarray:
    angles = np.linspace(0.0, 2.0 * math.pi, size, endpoint=False)
    points = FACE_CENTER + FACE_RADIUS * np.column_stack(
        [np.cos(angles), np.sin(angles), np.zeros(size)]
    )
    half_width = 0.5 * MOUTH_WIDTH
    half_height = 0.5 * ratio * MOUTH_WIDTH
    lips = cfg.lip_roles
    points[lips.cheilion_right] = MOUTH_CENTER + (-half_width, 0.0, 0.0)
    points[lips.cheilion_left] = MOUTH_CENTER + (half_width, 0.0, 0.0)
    points[lips.labiale_superius] = MOUTH_CENTER + (0.0, -half_height, 0.0)
    points[lips.labiale_inferius] = MOUTH_CENTER + (0.0, half_height, 0.0)
    return points


def hand_trajectory(hand: HandScript, default_base: Vector3) -> list[np.ndarray]:
    """Middle-base position per frame: the base plus cumulative displacements."""
    position = (hand.base or default_base).as_array()
    positions = [position]
    for displacement in hand.displacements:
        position = position + displacement.as_array()
        positions.append(position)
    return positions


def project(
    points: np.ndarray,
    scores: np.ndarray,
    view: str,
    script: MotionScript,
    cfg: FusionConfig,
) -> np.ndarray:
    """Pixel ``(x, y, score)`` rows of 3D points seen from one camera."""
    width = script.shoulder_width_px
    origin_x, origin_y, origin_z = script.origin_px
    values = np.empty((points.shape[0], 3), dtype=np.float64)
    if view == FRONTAL:
        values[:, 0] = points[:, 0] * width + origin_x
    else:
        values[:, 0] = cfg.z_sign * points[:, 2] * width / cfg.z_scale + origin_z
    values[:, 1] = points[:, 1] * width + origin_y
    values[:, 2] = scores
    return values


def _draw_scores(rng: np.random.Generator, size: int) -> np.ndarray:
    # Stored documents keep FLOAT_PRECISION digits; drawn scores must survive that
    return np.round(rng.uniform(MIN_SCORE, MAX_SCORE, size), FLOAT_PRECISION)


def _keyframe_points(
    script: MotionScript,
    t: int,
    hands: dict[str, HandScript],
    trajectories: dict[str, list[np.ndarray]],
    body: np.ndarray,
    sizes: dict[str, int],
    phono_cfg: PhonoConfig,
) -> Keyframe:
    points = {
        BODY: body,
        FACE: face_points(sizes[FACE], script.mouth_ratios[t], phono_cfg),
    }
    for side, hand in hands.items():
        group = HAND_GROUPS[side]
        points[group] = hand_points(
            trajectories[side][t],
            unit_normal(hand.normals[t]).as_array(),
            side,
            sizes[group],
            phono_cfg.hand_roles,
        )
    return points


def _direction_value(v: Vector3, scores: list[float], k: float) -> AttributeValue:
    return AttributeValue(
        value=canonical_direction_string(classify_direction(v, k)),
        score=attribute_score(scores),
    )


def _handshape_values(
    n_frames: int, pair: tuple[str, str] | None
) -> list[AttributeValue]:
    if pair is None:
        return [AttributeValue(value=NONE_VALUE, score=0.0)] * n_frames
    return [
        AttributeValue(value=code, score=HANDSHAPE_SCORE)
        for code in assign_handshapes(n_frames, *pair)
    ]


def _expected_sample(
    script: MotionScript,
    meta: SampleMeta,
    hands: dict[str, HandScript],
    fused_scores: list[Keyframe],
    cfg: PhonoConfig,
) -> PhonoSample:
    """Attributes the pipeline must recover, computed from the script itself."""
    k = cfg.threshold_k
    roles = cfg.hand_roles
    lips = cfg.lip_roles
    palm = (roles.wrist, roles.little_base, roles.index_base)
    lip_indices = (
        lips.labiale_superius,
        lips.labiale_inferius,
        lips.cheilion_right,
        lips.cheilion_left,
    )
    dh_side: HandSide = script.dominant_hand
    ndh_side: HandSide = "left" if dh_side == "right" else "right"

    def orientation(side: str, t: int) -> AttributeValue:
        scores = fused_scores[t][HAND_GROUPS[side]]
        normal = unit_normal(hands[side].normals[t])
        return _direction_value(normal, [float(scores[i]) for i in palm], k)

    def movement(side: str, t: int) -> AttributeValue:
        if t == 0:
            return AttributeValue(value=NONE_VALUE, score=0.0)
        group = HAND_GROUPS[side]
        scores = [
            float(fused_scores[t][group][roles.middle_base]),
            float(fused_scores[t - 1][group][roles.middle_base]),
        ]
        return _direction_value(hands[side].displacements[t - 1], scores, k)

    n_frames = script.n_frames
    dh_shapes = _handshape_values(n_frames, script.dominant.handshapes)
    ndh_shapes = _handshape_values(n_frames, script.non_dominant.handshapes)
    frames = []
    for t in range(n_frames):
        mouth_scores = [float(fused_scores[t][FACE][i]) for i in lip_indices]
        frames.append(
            PhonoFrame(
                frame_index=t,
                dh_handshape=dh_shapes[t],
                ndh_handshape=ndh_shapes[t],
                dh_orientation=orientation(dh_side, t),
                ndh_orientation=orientation(ndh_side, t),
                dh_movement=movement(dh_side, t),
                ndh_movement=movement(ndh_side, t),
                mouth_opening=AttributeValue(
                    value=script.mouth_ratios[t], score=attribute_score(mouth_scores)
                ),
            )
        )
    return PhonoSample(meta=meta, frames=frames)


def generate_sample(
    script: MotionScript,
    fusion_cfg: FusionConfig | None = None,
    phono_cfg: PhonoConfig | None = None,
    roles: RoleTable | None = None,
    *,
    source_fps: float = DEFAULT_SOURCE_FPS,
    target_fps: float = DEFAULT_TARGET_FPS,
    margin: float = DEFAULT_MARGIN,
) -> GeneratedSample:
    """Generate the frontal and side views of a script, at the source frame rate.

    Each scripted frame is held for one downsampling stride, so the
    pipeline sees exactly the scripted frames. Keypoint scores are drawn
    from ``script.seed``; the expected attributes use the same scores.
    Scores are rounded to the stored precision. With zero jitter, the
    default shoulder width and origin, and mouth ratios of at most
    three decimals, the stored phono document equals
    ``expected`` byte for byte.

    Args:
        script: Ground truth to realize
        fusion_cfg: Camera set-up the views must satisfy
        phono_cfg: Threshold and landmark roles
        roles: Role table giving the group sizes
        source_fps: Rate of the generated views
        target_fps: Rate the pipeline will reduce them to
        margin: Minimum distance of classified components from the threshold

    Returns:
        Frontal and side frames, the annotation and the expected PhonoSample

    Raises:
        InfeasibleScript: If the script fails validation
    """
    fusion_cfg = fusion_cfg or FusionConfig()
    phono_cfg = phono_cfg or PhonoConfig()
    roles = roles or load_role_table()
    script.validate(phono_cfg.threshold_k, margin)

    rng = np.random.default_rng(script.seed)
    sizes = roles.sizes
    n_frames = script.n_frames
    stride = frame_stride(source_fps, target_fps)

    dh_side = script.dominant_hand
    ndh_side = "left" if dh_side == "right" else "right"
    hands = {dh_side: script.dominant, ndh_side: script.non_dominant}
    trajectories = {
        side: hand_trajectory(hand, HAND_BASES[side]) for side, hand in hands.items()
    }
    body = body_points(sizes[BODY], fusion_cfg)

    front_keyframes: list[Keyframe] = []
    side_keyframes: list[Keyframe] = []
    fused_scores: list[Keyframe] = []
    for t in range(n_frames):
        points = _keyframe_points(
            script, t, hands, trajectories, body, sizes, phono_cfg
        )
        front_scores = {g: _draw_scores(rng, sizes[g]) for g in KEYPOINT_GROUPS}
        side_scores = {g: _draw_scores(rng, sizes[g]) for g in KEYPOINT_GROUPS}
        if script.jitter_amplitude > 0:
            amplitude = script.jitter_amplitude
            points = {
                g: p + rng.uniform(-amplitude, amplitude, p.shape)
                for g, p in points.items()
            }
        front_keyframes.append(
            {
                g: project(points[g], front_scores[g], FRONTAL, script, fusion_cfg)
                for g in KEYPOINT_GROUPS
            }
        )
        side_keyframes.append(
            {
                g: project(points[g], side_scores[g], SIDE, script, fusion_cfg)
                for g in KEYPOINT_GROUPS
            }
        )
        fused_scores.append(
            {g: np.minimum(front_scores[g], side_scores[g]) for g in KEYPOINT_GROUPS}
        )

    meta = SampleMeta(
        label=script.label,
        session=script.session,
        scene=script.scene,
        consultant=script.consultant,
        frame_start=script.frame_start,
        frame_end=script.frame_start + (n_frames - 1) * stride,
    )
    frontal: list[ViewFrame2D] = []
    side_view: list[ViewFrame2D] = []
    for index in range(meta.frame_end + 1):
        t = min(max(index - meta.frame_start, 0) // stride, n_frames - 1)
        frontal.append(
            ViewFrame2D(view=FRONTAL, frame_index=index, **front_keyframes[t])
        )
        side_view.append(
            ViewFrame2D(view=SIDE, frame_index=index, **side_keyframes[t])
        )

    dh_pair = script.dominant.handshapes or (NONE_VALUE, NONE_VALUE)
    ndh_pair = script.non_dominant.handshapes
    record = AnnotationRecord(
        meta=meta,
        initial_handshape=dh_pair[0],
        final_handshape=dh_pair[1],
        dominant_hand=dh_side,
        ndh_initial_handshape=ndh_pair[0] if ndh_pair else None,
        ndh_final_handshape=ndh_pair[1] if ndh_pair else None,
    )
    expected = _expected_sample(script, meta, hands, fused_scores, phono_cfg)
    logger.debug(
        f"Generated {meta.sample_id}: {n_frames} frames, {len(frontal)} source frames"
    )
    return GeneratedSample(
        frontal=frontal, side=side_view, record=record, expected=expected
    )
