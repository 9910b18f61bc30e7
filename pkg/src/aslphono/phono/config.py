"""Configuration for phonological attribute extraction."""

from dataclasses import dataclass, field

from ..models.constants import (
    CHEILION_LEFT_INDEX,
    CHEILION_RIGHT_INDEX,
    DEFAULT_THRESHOLD_K,
    FACE,
    GROUP_SIZES,
    INDEX_BASE_INDEX,
    LABIALE_INFERIUS_INDEX,
    LABIALE_SUPERIUS_INDEX,
    LEFT_HAND,
    LITTLE_BASE_INDEX,
    MIDDLE_BASE_INDEX,
    WRIST_INDEX,
)
from ..utils.env import env_name, get_env_float


@dataclass(frozen=True)
class HandRoles:
    """Hand keypoint indices of the palm landmarks."""

    wrist: int = WRIST_INDEX  # W
    little_base: int = LITTLE_BASE_INDEX  # L
    index_base: int = INDEX_BASE_INDEX  # I
    middle_base: int = MIDDLE_BASE_INDEX  # M

    def as_dict(self) -> dict[str, int]:
        return {
            "W": self.wrist,
            "L": self.little_base,
            "I": self.index_base,
            "M": self.middle_base,
        }


@dataclass(frozen=True)
class LipRoles:
    """Face keypoint indices of the lip landmarks."""

    labiale_superius: int = LABIALE_SUPERIUS_INDEX  # LS
    labiale_inferius: int = LABIALE_INFERIUS_INDEX  # LI
    cheilion_right: int = CHEILION_RIGHT_INDEX  # CH_r
    cheilion_left: int = CHEILION_LEFT_INDEX  # CH_l

    def as_dict(self) -> dict[str, int]:
        return {
            "LS": self.labiale_superius,
            "LI": self.labiale_inferius,
            "CH_r": self.cheilion_right,
            "CH_l": self.cheilion_left,
        }


@dataclass(frozen=True)
class PhonoConfig:
    """Threshold and landmark mapping used to derive attributes.

    ``threshold_k`` assumes shoulder-width-normalized coordinates.
    """

    threshold_k: float = DEFAULT_THRESHOLD_K
    hand_roles: HandRoles = field(default_factory=HandRoles)
    lip_roles: LipRoles = field(default_factory=LipRoles)

    def __post_init__(self) -> None:
        if not self.threshold_k > 0:
            error_msg = f"threshold_k must be > 0, got {self.threshold_k}"
            raise ValueError(error_msg)
        self.check_bounds(GROUP_SIZES)

    def check_bounds(self, sizes: dict[str, int]) -> None:
        """Raise ValueError if a landmark index falls outside its group."""
        for roles, group in ((self.hand_roles, LEFT_HAND), (self.lip_roles, FACE)):
            for role, index in roles.as_dict().items():
                if not 0 <= index < sizes[group]:
                    error_msg = (
                        f"{role} index {index} is outside the {group} group "
                        f"(size {sizes[group]})"
                    )
                    raise ValueError(error_msg)

    @classmethod
    def from_env(cls) -> "PhonoConfig":
        """Create configuration from ``ASLPHONO_*`` environment variables.

        Raises:
            ValueError: If a variable holds an invalid value
        """
        return cls(
            threshold_k=get_env_float(env_name("THRESHOLD_K"), DEFAULT_THRESHOLD_K)
        )
