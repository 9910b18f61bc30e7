"""Keypoint roles, 3D keypoints and skeleton frames."""

import logging
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path

import numpy as np
import pandas as pd
from cachetools import LRUCache, cached
from pydantic import BaseModel, ConfigDict, Field

from ..exceptions import WrongCardinality
from .constants import GROUP_SIZES, KEYPOINT_GROUPS
from .geometry import Vector3

logger = logging.getLogger(__name__)

DEFAULT_ROLE_TABLE = "keypoint_roles.csv"

# Column layout of every keypoint array in a SkeletonFrame
X, Y, Z, SCORE = 0, 1, 2, 3


class KeypointRole(BaseModel):
    """A named joint position inside a keypoint group."""

    model_config = ConfigDict(frozen=True)

    group: str
    index: int = Field(ge=0)
    name: str


@dataclass(frozen=True)
class Keypoint3D:
    """One joint: coordinates plus estimator confidence.

    A score of 0 marks a missing joint, whose coordinates are all zero.
    """

    role: KeypointRole
    x: float
    y: float
    z: float
    score: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.score <= 1.0:
            error_msg = (
                f"Keypoint score out of range for {self.role.name}: {self.score}"
            )
            raise ValueError(error_msg)
        if self.score == 0.0 and (self.x, self.y, self.z) != (0.0, 0.0, 0.0):
            error_msg = f"Missing keypoint {self.role.name} has non-zero coordinates"
            raise ValueError(error_msg)


class RoleTable:
    """Mapping of (group, index) to joint name, loaded from a delimited file."""

    def __init__(self, roles: list[KeypointRole]) -> None:
        self._by_group: dict[str, list[KeypointRole]] = {g: [] for g in KEYPOINT_GROUPS}
        for role in roles:
            if role.group not in self._by_group:
                error_msg = f"Unknown keypoint group in role table: {role.group!r}"
                raise ValueError(error_msg)
            self._by_group[role.group].append(role)
        for group, group_roles in self._by_group.items():
            group_roles.sort(key=lambda r: r.index)
            indices = [r.index for r in group_roles]
            if indices != list(range(len(indices))):
                error_msg = (
                    f"Role table indices for {group!r} must be 0..n-1 without gaps"
                )
                raise ValueError(error_msg)

    def group_size(self, group: str) -> int:
        return len(self._by_group[group])

    def names(self, group: str) -> list[str]:
        return [role.name for role in self._by_group[group]]

    def role(self, group: str, index: int) -> KeypointRole:
        return self._by_group[group][index]

    @property
    def sizes(self) -> dict[str, int]:
        return {group: self.group_size(group) for group in KEYPOINT_GROUPS}

    @classmethod
    def from_csv(cls, source: Path | str) -> "RoleTable":
        frame = pd.read_csv(source, dtype={"group": str, "index": int, "name": str})
        missing = {"group", "index", "name"} - set(frame.columns)
        if missing:
            error_msg = f"Role table is missing columns: {sorted(missing)}"
            raise ValueError(error_msg)
        roles = [
            KeypointRole(group=row["group"], index=int(row["index"]), name=row["name"])
            for row in frame.to_dict("records")
        ]
        return cls(roles)


@cached(cache=LRUCache(maxsize=8))
def load_role_table(path: str | None = None) -> RoleTable:
    """Load the role table from ``path`` or the bundled default asset.

    Args:
        path: Optional path to a custom role table

    Returns:
        The parsed role table (cached per path)
    """
    if path:
        logger.debug(f"Loading keypoint role table from {path}")
        return RoleTable.from_csv(path)
    asset = resources.files("aslphono.assets").joinpath(DEFAULT_ROLE_TABLE)
    with resources.as_file(asset) as asset_path:
        return RoleTable.from_csv(asset_path)


def empty_group(size: int) -> np.ndarray:
    """Zero-filled keypoint array (all joints missing)."""
    return np.zeros((size, 4), dtype=np.float64)


def _freeze(values: np.ndarray) -> np.ndarray:
    values = np.ascontiguousarray(values, dtype=np.float64)
    values.flags.writeable = False
    return values


@dataclass(frozen=True, eq=False)
class SkeletonFrame:
    """One time step of a 3D skeleton.

    Each group is an ``(n, 4)`` array of ``x, y, z, score`` rows.
    ``normalized_by`` is ``None`` before normalization, then ``"frame"``
    or ``"median"`` depending on which shoulder width was used.
    """

    frame_index: int
    body: np.ndarray
    face: np.ndarray
    left_hand: np.ndarray
    right_hand: np.ndarray
    normalized_by: str | None = field(default=None)

    def __post_init__(self) -> None:
        if self.frame_index < 0:
            error_msg = f"frame_index must be non-negative, got {self.frame_index}"
            raise ValueError(error_msg)
        for group in KEYPOINT_GROUPS:
            values = getattr(self, group)
            if values.ndim != 2 or values.shape[1] != 4:
                error_msg = f"{group} must be an (n, 4) array, got {values.shape}"
                raise WrongCardinality(error_msg)
            object.__setattr__(self, group, _freeze(values))

    def group(self, name: str) -> np.ndarray:
        return getattr(self, name)

    def point(self, group: str, index: int) -> Vector3:
        row = self.group(group)[index]
        return Vector3(float(row[X]), float(row[Y]), float(row[Z]))

    def score(self, group: str, index: int) -> float:
        return float(self.group(group)[index, SCORE])

    def keypoint(self, group: str, index: int, roles: RoleTable) -> Keypoint3D:
        row = self.group(group)[index]
        return Keypoint3D(
            role=roles.role(group, index),
            x=float(row[X]),
            y=float(row[Y]),
            z=float(row[Z]),
            score=float(row[SCORE]),
        )

    def keypoints(self, group: str, roles: RoleTable) -> list[Keypoint3D]:
        return [
            self.keypoint(group, index, roles)
            for index in range(self.group(group).shape[0])
        ]

    def check_sizes(self, sizes: dict[str, int] | None = None) -> None:
        """Raise ``WrongCardinality`` unless group sizes match ``sizes``."""
        expected = sizes or GROUP_SIZES
        for group in KEYPOINT_GROUPS:
            actual = self.group(group).shape[0]
            if actual != expected[group]:
                error_msg = (
                    f"{group} has {actual} keypoints, expected {expected[group]}"
                )
                raise WrongCardinality(error_msg)

    def with_groups(
        self, groups: dict[str, np.ndarray], normalized_by: str | None = None
    ) -> "SkeletonFrame":
        """Return a copy with replaced group arrays."""
        return replace(self, **groups, normalized_by=normalized_by)
