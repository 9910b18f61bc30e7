"""Parsing of per-view pose-estimation documents.

Two layouts are accepted:

* estimator-native, one document per frame::

    {"people": [{"pose_keypoints_2d": [x, y, score, ...],
                 "face_keypoints_2d": [...],
                 "hand_left_keypoints_2d": [...],
                 "hand_right_keypoints_2d": [...]}]}

* one document per video, with a frame array::

    {"view": "frontal",
     "frames": [{"frame_index": 0, "people": [{...}]}, ...]}

Absent or empty groups are zero-filled with score 0. Only the first person
of a frame is used.
"""

import json
import logging
import re
from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Any

import numpy as np
from cachetools import LRUCache, cached
from cachetools.keys import hashkey

from ..exceptions import MalformedDocument, MissingView, WrongCardinality
from ..models.constants import KEYPOINT_GROUPS, VIEWS
from ..models.keypoints import RoleTable, load_role_table

logger = logging.getLogger(__name__)

GROUP_KEYS: dict[str, str] = {
    "body": "pose_keypoints_2d",
    "face": "face_keypoints_2d",
    "left_hand": "hand_left_keypoints_2d",
    "right_hand": "hand_right_keypoints_2d",
}

FRAME_FILE_PATTERN = re.compile(r"_(\d+)_keypoints\.json$")

# Column layout of every ViewFrame2D group array
PX, PY, PSCORE = 0, 1, 2


@dataclass(frozen=True, eq=False)
class ViewFrame2D:
    """One frame of 2D keypoints seen from a single camera.

    Each group is an ``(n, 3)`` array of ``x, y, score`` rows in pixels.
    """

    view: str
    frame_index: int
    body: np.ndarray
    face: np.ndarray
    left_hand: np.ndarray
    right_hand: np.ndarray

    def __post_init__(self) -> None:
        if self.view not in VIEWS:
            error_msg = f"Unknown view {self.view!r}; expected one of {VIEWS}"
            raise ValueError(error_msg)
        for group in KEYPOINT_GROUPS:
            values = np.ascontiguousarray(getattr(self, group), dtype=np.float64)
            values.flags.writeable = False
            object.__setattr__(self, group, values)

    def group(self, name: str) -> np.ndarray:
        return getattr(self, name)


def _group_from_flat(
    raw: Any, group: str, size: int, frame_index: int
) -> np.ndarray:
    if raw is None or (isinstance(raw, list) and not raw):
        return np.zeros((size, 3), dtype=np.float64)
    if not isinstance(raw, list) or not all(
        isinstance(v, int | float) and not isinstance(v, bool) for v in raw
    ):
        error_msg = f"Frame {frame_index}: {group} must be a flat list of numbers"
        raise MalformedDocument(error_msg)
    if len(raw) != size * 3:
        error_msg = (
            f"Frame {frame_index}: {group} has {len(raw)} values, "
            f"expected {size * 3} ({size} keypoints x 3)"
        )
        raise WrongCardinality(error_msg)
    values = np.array(raw, dtype=np.float64).reshape(size, 3)
    if not np.all(np.isfinite(values)):
        error_msg = f"Frame {frame_index}: {group} contains non-finite values"
        raise MalformedDocument(error_msg)
    scores = values[:, PSCORE]
    if np.any(scores < 0.0) or np.any(scores > 1.0):
        error_msg = f"Frame {frame_index}: {group} has scores outside [0, 1]"
        raise MalformedDocument(error_msg)
    missing = scores == 0.0
    if np.any(values[missing, :2] != 0.0):
        logger.debug(
            f"Frame {frame_index}: zeroing coordinates of {group} joints with score 0"
        )
        values[missing, :2] = 0.0
    return values


def _frame_from_entry(
    entry: dict[str, Any], view: str, frame_index: int, roles: RoleTable
) -> ViewFrame2D:
    person: dict[str, Any] = {}
    if "people" in entry:
        people = entry["people"]
        if not isinstance(people, list):
            error_msg = f"Frame {frame_index}: 'people' must be a list"
            raise MalformedDocument(error_msg)
        if len(people) > 1:
            logger.debug(
                f"Frame {frame_index}: {len(people)} people detected, using the first"
            )
        if people:
            if not isinstance(people[0], dict):
                error_msg = f"Frame {frame_index}: person entries must be objects"
                raise MalformedDocument(error_msg)
            person = people[0]
    else:
        person = entry
    groups = {
        group: _group_from_flat(
            person.get(GROUP_KEYS[group]), group, roles.group_size(group), frame_index
        )
        for group in KEYPOINT_GROUPS
    }
    return ViewFrame2D(view=view, frame_index=frame_index, **groups)


def _load_document(document: str | bytes | IO[str] | IO[bytes] | dict) -> Any:
    if isinstance(document, dict):
        return document
    try:
        if isinstance(document, str | bytes):
            return json.loads(document)
        return json.load(document)
    except (json.JSONDecodeError, UnicodeDecodeError) as err:
        error_msg = f"Pose document is not valid JSON: {err}"
        raise MalformedDocument(error_msg) from err


def parse_view_frames(
    document: str | bytes | IO[str] | IO[bytes] | dict,
    view: str,
    *,
    frame_index: int = 0,
    roles: RoleTable | None = None,
) -> list[ViewFrame2D]:
    """Parse a pose document into one ViewFrame2D per source frame.

    Args:
        document: JSON text, a readable stream, or an already-parsed mapping
        view: ``"frontal"`` or ``"side"``
        frame_index: Frame number for single-frame documents, which do not
            carry one themselves
        roles: Role table giving the group sizes (default table if omitted)

    Returns:
        Frames in increasing frame order

    Raises:
        MalformedDocument: On syntax errors or unexpected structure
        WrongCardinality: When a group does not have the expected size
    """
    roles = roles or load_role_table()
    data = _load_document(document)
    if not isinstance(data, dict):
        error_msg = "Pose document must be a JSON object"
        raise MalformedDocument(error_msg)

    if "frames" not in data:
        return [_frame_from_entry(data, view, frame_index, roles)]

    entries = data["frames"]
    if not isinstance(entries, list):
        error_msg = "'frames' must be a list"
        raise MalformedDocument(error_msg)
    frames = []
    for position, entry in enumerate(entries):
        if not isinstance(entry, dict):
            error_msg = f"Frame entry {position} must be an object"
            raise MalformedDocument(error_msg)
        index = entry.get("frame_index", position)
        if not isinstance(index, int) or isinstance(index, bool) or index < 0:
            error_msg = f"Frame entry {position} has an invalid frame_index: {index!r}"
            raise MalformedDocument(error_msg)
        frames.append(_frame_from_entry(entry, view, index, roles))
    frames.sort(key=lambda f: f.frame_index)
    indices = [f.frame_index for f in frames]
    if len(set(indices)) != len(indices):
        error_msg = "Pose document repeats a frame_index"
        raise MalformedDocument(error_msg)
    return frames


def emit_view_document(frames: Iterable[ViewFrame2D]) -> dict[str, Any]:
    """Serialize frames into the per-video document layout.

    Values are written at full precision so parsing the result gives back
    every (x, y, score) triple unchanged.
    """
    frames = list(frames)
    view = frames[0].view if frames else None
    return {
        "view": view,
        "frames": [
            {
                "frame_index": frame.frame_index,
                "people": [
                    {
                        GROUP_KEYS[group]: frame.group(group).reshape(-1).tolist()
                        for group in KEYPOINT_GROUPS
                    }
                ],
            }
            for frame in frames
        ],
    }


def view_document_path(view_dir: Path, session: str, scene: str) -> Path:
    """Location of the per-video document for a session/scene."""
    return view_dir / session / f"{scene}.json"


@cached(
    cache=LRUCache(maxsize=16),
    key=lambda view_dir, session, scene, view, roles: hashkey(
        str(view_dir), session, scene, view, id(roles)
    ),
)
def load_view(
    view_dir: Path, session: str, scene: str, view: str, roles: RoleTable
) -> tuple[ViewFrame2D, ...]:
    """Load every frame of one video seen from one camera.

    Looks for ``<view_dir>/<session>/<scene>.json`` first, then for a
    directory of per-frame ``*_<frame>_keypoints.json`` documents.

    Raises:
        MissingView: If neither layout exists
    """
    video_path = view_document_path(view_dir, session, scene)
    if video_path.is_file():
        logger.debug(f"Parsing {view} document {video_path}")
        with video_path.open("rb") as handle:
            return tuple(parse_view_frames(handle, view, roles=roles))

    frame_dir = view_dir / session / scene
    if frame_dir.is_dir():
        frames = []
        for path in sorted(frame_dir.glob("*_keypoints.json")):
            match = FRAME_FILE_PATTERN.search(path.name)
            if not match:
                logger.debug(f"Ignoring {path.name}: no frame number in file name")
                continue
            with path.open("rb") as handle:
                frames.extend(
                    parse_view_frames(
                        handle, view, frame_index=int(match.group(1)), roles=roles
                    )
                )
        if frames:
            frames.sort(key=lambda f: f.frame_index)
            return tuple(frames)

    error_msg = f"No {view} pose document for session {session!r}, scene {scene!r}"
    raise MissingView(error_msg)

