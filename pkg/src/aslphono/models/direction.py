"""Direction label sets used for palm orientation and hand movement."""

from collections.abc import Iterable
from dataclasses import dataclass

from .constants import (
    DIRECTION_SEPARATOR,
    NONE_VALUE,
    X_LABELS,
    Y_LABELS,
    Z_LABELS,
)


@dataclass(frozen=True)
class DirectionSet:
    """Up to one label per axis: right/left, up/down, body/front."""

    x: str | None = None
    y: str | None = None
    z: str | None = None

    def __post_init__(self) -> None:
        for axis, value, allowed in (
            ("x", self.x, X_LABELS),
            ("y", self.y, Y_LABELS),
            ("z", self.z, Z_LABELS),
        ):
            if value is not None and value not in allowed:
                error_msg = f"Invalid {axis}-axis direction label: {value!r}"
                raise ValueError(error_msg)

    @property
    def labels(self) -> tuple[str, ...]:
        """Labels in canonical x, y, z order."""
        return tuple(label for label in (self.x, self.y, self.z) if label is not None)

    def __len__(self) -> int:
        return len(self.labels)

    def __bool__(self) -> bool:
        return bool(self.labels)

    @classmethod
    def from_labels(cls, labels: Iterable[str]) -> "DirectionSet":
        """Build a set from labels given in any order.

        Raises:
            ValueError: If a label is unknown or an axis gets two labels
        """
        slots: dict[str, str] = {}
        for label in labels:
            for axis, allowed in (("x", X_LABELS), ("y", Y_LABELS), ("z", Z_LABELS)):
                if label in allowed:
                    if axis in slots and slots[axis] != label:
                        error_msg = (
                            f"Conflicting {axis}-axis labels: "
                            f"{slots[axis]!r} and {label!r}"
                        )
                        raise ValueError(error_msg)
                    slots[axis] = label
                    break
            else:
                error_msg = f"Unknown direction label: {label!r}"
                raise ValueError(error_msg)
        return cls(**slots)

    def __str__(self) -> str:
        return canonical_direction_string(self)


EMPTY_DIRECTION = DirectionSet()


def canonical_direction_string(direction: DirectionSet) -> str:
    """Serialize a direction set: x label, then y, then z, joined by ``_``.

    The empty set serializes as ``"none"``.
    """
    labels = direction.labels
    if not labels:
        return NONE_VALUE
    return DIRECTION_SEPARATOR.join(labels)


def parse_direction_string(value: str) -> DirectionSet:
    """Parse a direction string in any label order.

    Raises:
        ValueError: If the string contains unknown or conflicting labels
    """
    if value == NONE_VALUE:
        return EMPTY_DIRECTION
    if not value:
        error_msg = "Empty direction string"
        raise ValueError(error_msg)
    return DirectionSet.from_labels(value.split(DIRECTION_SEPARATOR))


def is_canonical_direction_string(value: str) -> bool:
    """Check that ``value`` parses and is already in canonical order."""
    try:
        return canonical_direction_string(parse_direction_string(value)) == value
    except ValueError:
        return False
