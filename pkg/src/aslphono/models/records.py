"""Sample metadata and the 3D and phonological sample records."""

from dataclasses import dataclass
from typing import Any

import numpy as np
from pydantic import Field, model_validator

from ..utils.io import sanitize_filename
from .base import DatasetModel, round_floats
from .constants import (
    ATTRIBUTE_NAMES,
    KEYPOINT_GROUPS,
    MOVEMENT_ATTRIBUTES,
    NONE_VALUE,
)
from .keypoints import SCORE, X, Y, Z, RoleTable, SkeletonFrame


class SampleMeta(DatasetModel):
    """Identity of a sign occurrence in the source corpus."""

    label: str = Field(min_length=1)
    session: str
    scene: str
    consultant: str
    frame_start: int = Field(ge=0)
    frame_end: int = Field(ge=0)

    @model_validator(mode="after")
    def _check_frame_range(self) -> "SampleMeta":
        if self.frame_start > self.frame_end:
            error_msg = (
                f"frame_start ({self.frame_start}) is after "
                f"frame_end ({self.frame_end})"
            )
            raise ValueError(error_msg)
        return self

    @property
    def sample_id(self) -> str:
        """Stable identifier used for file names and reports."""
        raw = (
            f"{self.label}_{self.session}_{self.scene}_{self.consultant}_"
            f"{self.frame_start}-{self.frame_end}"
        )
        return sanitize_filename(raw, max_length=150)


class AttributeValue(DatasetModel):
    """Value of one phonological attribute in one frame, with its score."""

    value: str | float
    score: float = Field(ge=0.0, le=1.0)

    @model_validator(mode="after")
    def _check_value(self) -> "AttributeValue":
        if isinstance(self.value, float) and self.value < 0.0:
            error_msg = (
                f"Numeric attribute values must be non-negative, got {self.value}"
            )
            raise ValueError(error_msg)
        return self


class PhonoFrame(DatasetModel):
    """Phonological attributes of one frame."""

    frame_index: int = Field(ge=0)
    dh_handshape: AttributeValue
    ndh_handshape: AttributeValue
    dh_orientation: AttributeValue
    ndh_orientation: AttributeValue
    dh_movement: AttributeValue
    ndh_movement: AttributeValue
    mouth_opening: AttributeValue

    def attribute(self, name: str) -> AttributeValue:
        if name not in ATTRIBUTE_NAMES:
            error_msg = f"Unknown phonological attribute: {name!r}"
            raise KeyError(error_msg)
        return getattr(self, name)


class PhonoSample(DatasetModel):
    """Sign metadata plus per-frame phonological attributes."""

    meta: SampleMeta
    frames: list[PhonoFrame] = Field(min_length=1)

    @model_validator(mode="after")
    def _check_frames(self) -> "PhonoSample":
        first = self.frames[0]
        for name in MOVEMENT_ATTRIBUTES:
            if first.attribute(name).value != NONE_VALUE:
                error_msg = f"First frame {name} must be {NONE_VALUE!r}"
                raise ValueError(error_msg)
        indices = [frame.frame_index for frame in self.frames]
        if any(b <= a for a, b in zip(indices, indices[1:], strict=False)):
            error_msg = "Frame indices must be strictly increasing"
            raise ValueError(error_msg)
        return self

    def column(self, name: str) -> list[str | float]:
        """Values of one attribute across frames."""
        return [frame.attribute(name).value for frame in self.frames]

    def to_document(self) -> dict[str, Any]:
        document = self.meta.to_document()
        document["frames"] = [frame.to_document() for frame in self.frames]
        return document

    @classmethod
    def from_document(cls, data: dict[str, Any], **kwargs: Any) -> "PhonoSample":
        meta_fields = {key: data[key] for key in SampleMeta.model_fields if key in data}
        return cls.model_validate({"meta": meta_fields, "frames": data.get("frames")})


class GroupDocument(DatasetModel):
    """Parallel name/score/x/y/z arrays of one keypoint group."""

    name: list[str]
    score: list[float]
    x: list[float]
    y: list[float]
    z: list[float]

    @model_validator(mode="after")
    def _check_lengths(self) -> "GroupDocument":
        size = len(self.name)
        if any(len(values) != size for values in (self.score, self.x, self.y, self.z)):
            error_msg = "name, score, x, y and z arrays must have equal length"
            raise ValueError(error_msg)
        return self

    @classmethod
    def from_array(cls, names: list[str], values: np.ndarray) -> "GroupDocument":
        return cls(
            name=names,
            score=values[:, SCORE].tolist(),
            x=values[:, X].tolist(),
            y=values[:, Y].tolist(),
            z=values[:, Z].tolist(),
        )

    def to_array(self) -> np.ndarray:
        return np.column_stack([self.x, self.y, self.z, self.score]).astype(np.float64)


class FrameDocument(DatasetModel):
    """Serialized SkeletonFrame."""

    frame_index: int = Field(ge=0)
    normalized_by: str | None = None
    body: GroupDocument
    face: GroupDocument
    left_hand: GroupDocument
    right_hand: GroupDocument


@dataclass(frozen=True, eq=False)
class Sample3D:
    """Sign metadata plus its ordered skeleton sequence."""

    meta: SampleMeta
    frames: tuple[SkeletonFrame, ...]

    def __post_init__(self) -> None:
        if not self.frames:
            error_msg = f"Sample {self.meta.sample_id} has no frames"
            raise ValueError(error_msg)
        indices = [frame.frame_index for frame in self.frames]
        if any(b <= a for a, b in zip(indices, indices[1:], strict=False)):
            error_msg = f"Sample {self.meta.sample_id} frame indices must increase"
            raise ValueError(error_msg)

    def to_document(self, roles: RoleTable) -> dict[str, Any]:
        """Serialize to the 3D dataset document layout."""
        document = self.meta.to_document()
        frames = []
        for frame in self.frames:
            frame_document: dict[str, Any] = {
                "frame_index": frame.frame_index,
                "normalized_by": frame.normalized_by,
            }
            for group in KEYPOINT_GROUPS:
                frame_document[group] = GroupDocument.from_array(
                    roles.names(group), frame.group(group)
                ).model_dump()
            frames.append(frame_document)
        document["frames"] = round_floats(frames)
        return document

    @classmethod
    def from_document(cls, data: dict[str, Any]) -> "Sample3D":
        """Parse a 3D dataset document."""
        meta = SampleMeta.model_validate(
            {key: data[key] for key in SampleMeta.model_fields if key in data}
        )
        frames = []
        for raw_frame in data.get("frames") or []:
            parsed = FrameDocument.model_validate(raw_frame)
            frames.append(
                SkeletonFrame(
                    frame_index=parsed.frame_index,
                    normalized_by=parsed.normalized_by,
                    **{
                        group: getattr(parsed, group).to_array()
                        for group in KEYPOINT_GROUPS
                    },
                )
            )
        return cls(meta=meta, frames=tuple(frames))


class SkippedSample(DatasetModel):
    """A sample dropped by a pipeline stage, with the reason."""

    sample_id: str
    label: str
    category: str
    message: str
