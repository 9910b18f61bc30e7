"""Schema and invariant checks for datasets written by the builders."""

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from .exceptions import AslPhonoError, MalformedDocument
from .fuse.config import FusionConfig
from .fuse.reconstruction import NORMALIZED_BY_FRAME, NORMALIZED_BY_MEDIAN
from .models.constants import (
    BODY,
    CATEGORICAL_ATTRIBUTES,
    DH_HANDSHAPE,
    KEYPOINT_GROUPS,
    MOUTH_OPENING,
    NDH_HANDSHAPE,
    NONE_VALUE,
)
from .models.direction import is_canonical_direction_string
from .models.keypoints import RoleTable, SkeletonFrame, load_role_table
from .models.records import PhonoSample, Sample3D, SkippedSample
from .utils.decorators import collect_sample_errors
from .utils.io import read_json

logger = logging.getLogger(__name__)

# Serialized coordinates carry 6 decimals, so widths are checked loosely
DOCUMENT_WIDTH_TOLERANCE = 1e-5

INVALID_3D = "Invalid3D"
INVALID_PHONO = "InvalidPhono"
INDEX_MISMATCH = "IndexMismatch"


def _parse(model: Any, document: Any) -> Any:
    try:
        return model.from_document(document)
    except (ValidationError, ValueError, KeyError, TypeError, AslPhonoError) as err:
        return err


def _sequence_problems(
    indices: list[int], frame_start: int, frame_end: int, stride: int | None
) -> list[str]:
    """Frames are numbered 0..n-1 and fit the downsampled segment."""
    problems = []
    span = frame_end - frame_start + 1
    if stride is None:
        if len(indices) > span:
            problems.append(f"{len(indices)} frames in a {span}-frame segment")
    else:
        expected = (frame_end - frame_start) // stride + 1
        if len(indices) != expected:
            problems.append(
                f"{len(indices)} frames, expected {expected} for segment "
                f"{frame_start}-{frame_end} at stride {stride}"
            )
    for position, frame_index in enumerate(indices):
        if frame_index != position:
            problems.append(f"frame {position}: frame_index is {frame_index}")
    return problems


def _keypoint_problems(
    where: str, frame: SkeletonFrame, group: str, roles: RoleTable
) -> list[str]:
    try:
        frame.keypoints(group, roles)
    except ValueError as err:
        return [f"{where}: {group}: {err}"]
    return []


def check_sample3d_document(
    document: dict[str, Any],
    roles: RoleTable,
    cfg: FusionConfig | None = None,
    tolerance: float = DOCUMENT_WIDTH_TOLERANCE,
    stride: int | None = None,
) -> list[str]:
    """List every problem of a 3D sample document; empty if it is valid.

    With ``stride`` the frame count must be exactly the number of frames the
    segment downsamples to; without it, at most the segment length.
    """
    cfg = cfg or FusionConfig()
    parsed = _parse(Sample3D, document)
    if isinstance(parsed, Exception):
        return [f"schema: {parsed}"]
    sample: Sample3D = parsed
    meta = sample.meta
    problems = _sequence_problems(
        [frame.frame_index for frame in sample.frames],
        meta.frame_start,
        meta.frame_end,
        stride,
    )
    for raw_frame, frame in zip(document["frames"], sample.frames, strict=True):
        where = f"frame {frame.frame_index}"
        if frame.normalized_by not in (NORMALIZED_BY_FRAME, NORMALIZED_BY_MEDIAN):
            problems.append(f"{where}: unknown normalized_by {frame.normalized_by!r}")
        for group in KEYPOINT_GROUPS:
            values = frame.group(group)
            if values.shape[0] != roles.group_size(group):
                problems.append(
                    f"{where}: {group} has {values.shape[0]} keypoints, "
                    f"expected {roles.group_size(group)}"
                )
                continue
            if raw_frame[group]["name"] != roles.names(group):
                problems.append(f"{where}: {group} names differ from the role table")
            problems.extend(_keypoint_problems(where, frame, group, roles))
        left, right = cfg.left_shoulder_index, cfg.right_shoulder_index
        if (
            frame.normalized_by == NORMALIZED_BY_FRAME
            and frame.score(BODY, left) > 0
            and frame.score(BODY, right) > 0
        ):
            width = (frame.point(BODY, left) - frame.point(BODY, right)).norm()
            if abs(width - 1.0) > tolerance:
                problems.append(f"{where}: shoulder width {width} is not 1")
    return problems


def _check_phono_frame(frame: Any) -> list[str]:
    where = f"frame {frame.frame_index}"
    problems = []
    for name in CATEGORICAL_ATTRIBUTES:
        attribute = frame.attribute(name)
        if not isinstance(attribute.value, str) or not attribute.value:
            problems.append(f"{where}: {name} must be a non-empty string")
            continue
        if name in (DH_HANDSHAPE, NDH_HANDSHAPE):
            continue
        if not is_canonical_direction_string(attribute.value):
            problems.append(f"{where}: {name} {attribute.value!r} is not canonical")
        if attribute.score == 0.0 and attribute.value != NONE_VALUE:
            problems.append(
                f"{where}: {name} has score 0 but value {attribute.value!r}"
            )
    mouth = frame.attribute(MOUTH_OPENING)
    if not isinstance(mouth.value, float) or not math.isfinite(mouth.value):
        problems.append(f"{where}: {MOUTH_OPENING} must be a finite number")
    elif mouth.score == 0.0 and mouth.value != 0.0:
        problems.append(f"{where}: {MOUTH_OPENING} has score 0 but value {mouth.value}")
    return problems


def check_phono_document(
    document: dict[str, Any], stride: int | None = None
) -> list[str]:
    """List every problem of a phonological sample document; empty if it is valid."""
    parsed = _parse(PhonoSample, document)
    if isinstance(parsed, Exception):
        return [f"schema: {parsed}"]
    sample: PhonoSample = parsed
    meta = sample.meta
    problems = _sequence_problems(
        [frame.frame_index for frame in sample.frames],
        meta.frame_start,
        meta.frame_end,
        stride,
    )
    for frame in sample.frames:
        problems.extend(_check_phono_frame(frame))
    return problems


@dataclass(frozen=True)
class ValidationTask:
    """One indexed document to check."""

    path: Path
    sample_id: str
    label: str
    kind: str
    indexed_frames: int
    fusion: FusionConfig
    role_table: str | None = None
    stride: int | None = None


@collect_sample_errors("validate")
def validate_document(task: ValidationTask) -> list[SkippedSample]:
    """Check one document of a dataset; returns one entry per problem found."""
    try:
        document = read_json(task.path)
    except (OSError, ValueError) as err:
        error_msg = f"Cannot read {task.path}: {err}"
        raise MalformedDocument(error_msg) from err
    if not isinstance(document, dict):
        error_msg = f"{task.path} is not a JSON object"
        raise MalformedDocument(error_msg)

    if task.kind == "sample3d":
        category = INVALID_3D
        roles = load_role_table(task.role_table)
        problems = check_sample3d_document(
            document, roles, task.fusion, stride=task.stride
        )
    else:
        category = INVALID_PHONO
        problems = check_phono_document(document, task.stride)

    issues = [
        SkippedSample(
            sample_id=task.sample_id, label=task.label, category=category, message=p
        )
        for p in problems
    ]
    frames = document.get("frames")
    if isinstance(frames, list) and len(frames) != task.indexed_frames:
        issues.append(
            SkippedSample(
                sample_id=task.sample_id,
                label=task.label,
                category=INDEX_MISMATCH,
                message=(
                    f"index lists {task.indexed_frames} frames, "
                    f"document has {len(frames)}"
                ),
            )
        )
    if document.get("label") not in (None, task.label):
        issues.append(
            SkippedSample(
                sample_id=task.sample_id,
                label=task.label,
                category=INDEX_MISMATCH,
                message=f"index label {task.label!r} differs from the document",
            )
        )
    for issue in issues:
        logger.warning(f"{task.sample_id}: {issue.message}")
    return issues
