"""Configuration for 3D skeleton reconstruction."""

import os
from dataclasses import dataclass
from typing import Literal

from ..models.constants import (
    DEFAULT_EPSILON_WIDTH,
    DEFAULT_Z_SCALE,
    LEFT_SHOULDER_INDEX,
    RIGHT_SHOULDER_INDEX,
    SIGNER_LEFT,
    SIGNER_RIGHT,
)
from ..utils.env import env_name, get_env_float, is_env_truthy

SideCamera = Literal["signer_left", "signer_right"]


@dataclass(frozen=True)
class FusionConfig:
    """Knobs of the frontal + side view fusion.

    The side camera is assumed to stand at the signer's right unless told
    otherwise; its placement is not recorded in the source corpus.
    """

    z_scale: float = DEFAULT_Z_SCALE  # side-view pixel -> frontal-view pixel
    side_camera_side: SideCamera = SIGNER_RIGHT
    min_view_score: float = 0.0  # joints below this in either view are dropped
    epsilon_width: float = DEFAULT_EPSILON_WIDTH
    left_shoulder_index: int = LEFT_SHOULDER_INDEX
    right_shoulder_index: int = RIGHT_SHOULDER_INDEX
    log_y_discrepancy: bool = False  # debug-log |y_front - y_side| per frame

    def __post_init__(self) -> None:
        if not self.z_scale > 0:
            error_msg = f"z_scale must be > 0, got {self.z_scale}"
            raise ValueError(error_msg)
        if not self.epsilon_width > 0:
            error_msg = f"epsilon_width must be > 0, got {self.epsilon_width}"
            raise ValueError(error_msg)
        if not 0.0 <= self.min_view_score <= 1.0:
            error_msg = f"min_view_score must be in [0, 1], got {self.min_view_score}"
            raise ValueError(error_msg)
        if self.side_camera_side not in (SIGNER_LEFT, SIGNER_RIGHT):
            error_msg = (
                f"side_camera_side must be {SIGNER_LEFT!r} or {SIGNER_RIGHT!r}, "
                f"got {self.side_camera_side!r}"
            )
            raise ValueError(error_msg)

    @property
    def z_sign(self) -> float:
        """+1 when side-view x already points toward the frontal camera."""
        return -1.0 if self.side_camera_side == SIGNER_LEFT else 1.0

    @classmethod
    def from_env(cls) -> "FusionConfig":
        """Create configuration from ``ASLPHONO_*`` environment variables.

        Returns:
            FusionConfig with values from the environment or defaults

        Raises:
            ValueError: If a variable holds an invalid value
        """
        side = os.getenv(env_name("SIDE_CAMERA"), SIGNER_RIGHT).strip().lower()
        return cls(
            z_scale=get_env_float(env_name("Z_SCALE"), DEFAULT_Z_SCALE),
            side_camera_side=side,  # type: ignore[arg-type]
            min_view_score=get_env_float(env_name("MIN_VIEW_SCORE"), 0.0),
            epsilon_width=get_env_float(
                env_name("EPSILON_WIDTH"), DEFAULT_EPSILON_WIDTH
            ),
            log_y_discrepancy=is_env_truthy(env_name("LOG_Y_DISCREPANCY")),
        )
