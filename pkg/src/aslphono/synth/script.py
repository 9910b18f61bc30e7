"""Motion scripts: the ground truth a synthetic sample is generated from."""

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from ..exceptions import InfeasibleScript
from ..models.constants import DEFAULT_THRESHOLD_K
from ..models.geometry import Vector3

DEFAULT_MARGIN = 0.05
DEFAULT_SHOULDER_WIDTH_PX = 200.0
DEFAULT_ORIGIN_PX = (960.0, 540.0, 640.0)
MAX_SCRIPT_FRAMES = 12
MOUTH_RATIO_DECIMALS = 3

# Starting middle-base positions, in shoulder widths
RIGHT_HAND_BASE = Vector3(-0.45, 0.6, 0.5)
LEFT_HAND_BASE = Vector3(0.45, 0.6, 0.5)

# Draws per axis when picking a random direction
_AXIS_CHOICES = (-1, 0, 1)


@dataclass(frozen=True)
class HandScript:
    """Trajectory of one hand.

    ``normals`` has one target palm normal per frame and ``displacements``
    one middle-base displacement per frame transition (``n_frames - 1``).
    """

    normals: tuple[Vector3, ...]
    displacements: tuple[Vector3, ...]
    handshapes: tuple[str, str] | None = None
    base: Vector3 | None = None

    @property
    def n_frames(self) -> int:
        return len(self.normals)

    @classmethod
    def constant(
        cls,
        normal: Vector3,
        displacement: Vector3,
        n_frames: int,
        handshapes: tuple[str, str] | None = None,
    ) -> "HandScript":
        """Same normal in every frame and the same displacement between frames."""
        return cls(
            normals=(normal,) * n_frames,
            displacements=(displacement,) * max(n_frames - 1, 0),
            handshapes=handshapes,
        )


@dataclass(frozen=True)
class MotionScript:
    """Everything needed to generate one synthetic sign occurrence."""

    dominant: HandScript
    non_dominant: HandScript
    mouth_ratios: tuple[float, ...]
    dominant_hand: Literal["left", "right"] = "right"
    label: str = "SYNTH"
    session: str = "synth"
    scene: str = "scene0"
    consultant: str = "generator"
    frame_start: int = 0
    shoulder_width_px: float = DEFAULT_SHOULDER_WIDTH_PX
    origin_px: tuple[float, float, float] = field(default=DEFAULT_ORIGIN_PX)
    seed: int = 0
    jitter_amplitude: float = 0.0

    @property
    def n_frames(self) -> int:
        return len(self.mouth_ratios)

    def validate(
        self, threshold_k: float = DEFAULT_THRESHOLD_K, margin: float = DEFAULT_MARGIN
    ) -> None:
        """Check the script can be generated and recovered unambiguously.

        Raises:
            InfeasibleScript: On inconsistent lengths, a zero normal, a
                negative mouth ratio, or any classified component closer
                than ``margin`` to ``threshold_k``
        """
        n = self.n_frames
        if n < 1:
            error_msg = "A script needs at least one frame"
            raise InfeasibleScript(error_msg)
        if self.dominant.handshapes is None:
            error_msg = "The dominant hand needs a handshape pair"
            raise InfeasibleScript(error_msg)
        if not self.shoulder_width_px > 0:
            error_msg = f"shoulder_width_px must be > 0, got {self.shoulder_width_px}"
            raise InfeasibleScript(error_msg)
        if self.jitter_amplitude < 0:
            error_msg = f"jitter_amplitude must be >= 0, got {self.jitter_amplitude}"
            raise InfeasibleScript(error_msg)
        for ratio in self.mouth_ratios:
            if not (math.isfinite(ratio) and ratio >= 0):
                error_msg = f"Mouth ratio must be finite and >= 0, got {ratio}"
                raise InfeasibleScript(error_msg)
        hands = (("dominant", self.dominant), ("non-dominant", self.non_dominant))
        for name, hand in hands:
            if hand.n_frames != n or len(hand.displacements) != n - 1:
                error_msg = (
                    f"{name} hand has {hand.n_frames} normals and "
                    f"{len(hand.displacements)} displacements for {n} frames"
                )
                raise InfeasibleScript(error_msg)
            for normal in hand.normals:
                unit = unit_normal(normal)
                check_margin(unit, threshold_k, margin, f"{name} palm normal")
            for displacement in hand.displacements:
                check_margin(displacement, threshold_k, margin, f"{name} displacement")


def unit_normal(normal: Vector3) -> Vector3:
    """Scale a palm-normal target to unit length.

    Raises:
        InfeasibleScript: If the normal has zero magnitude
    """
    length = normal.norm()
    if length == 0.0:
        error_msg = "Palm normal target has zero magnitude"
        raise InfeasibleScript(error_msg)
    return normal.scale(1.0 / length)


def check_margin(v: Vector3, threshold_k: float, margin: float, what: str) -> None:
    """Raise InfeasibleScript if a component is within ``margin`` of +/-k."""
    for component in v.as_tuple():
        if abs(abs(component) - threshold_k) < margin:
            error_msg = (
                f"{what} {v.as_tuple()} has a component within {margin} "
                f"of the threshold {threshold_k}"
            )
            raise InfeasibleScript(error_msg)


def _signed_component(
    rng: np.random.Generator, sign: int, threshold_k: float, margin: float
) -> float:
    if sign == 0:
        return float(rng.uniform(-(threshold_k - margin), threshold_k - margin))
    low = threshold_k + margin
    return sign * float(rng.uniform(low, low + 0.5))


def _signed_vector(
    rng: np.random.Generator, signs: np.ndarray, threshold_k: float, margin: float
) -> Vector3:
    components = (_signed_component(rng, int(s), threshold_k, margin) for s in signs)
    return Vector3(*components)


def random_displacement(
    rng: np.random.Generator, threshold_k: float, margin: float
) -> Vector3:
    """Displacement whose labeled axes clear the threshold by at least ``margin``."""
    signs = rng.choice(_AXIS_CHOICES, size=3, p=(0.25, 0.5, 0.25))
    if rng.random() < 0.2:
        return Vector3.zero()
    return _signed_vector(rng, signs, threshold_k, margin)


def random_normal(
    rng: np.random.Generator, threshold_k: float, margin: float, attempts: int = 100
) -> Vector3:
    """Unit palm normal with every component at least ``margin`` from +/-k.

    Raises:
        InfeasibleScript: If no valid normal is found within ``attempts`` draws
    """
    for _ in range(attempts):
        signs = rng.choice(_AXIS_CHOICES, size=3)
        if not signs.any():
            continue
        raw = _signed_vector(rng, signs, threshold_k, margin)
        unit = unit_normal(raw)
        try:
            check_margin(unit, threshold_k, margin, "palm normal")
        except InfeasibleScript:
            continue
        return unit
    error_msg = f"No palm normal clears threshold {threshold_k} by {margin}"
    raise InfeasibleScript(error_msg)


def random_hand(
    rng: np.random.Generator,
    n_frames: int,
    threshold_k: float,
    margin: float,
    handshapes: tuple[str, str] | None,
) -> HandScript:
    """Random trajectory: a normal per frame, a displacement per transition."""
    return HandScript(
        normals=tuple(random_normal(rng, threshold_k, margin) for _ in range(n_frames)),
        displacements=tuple(
            random_displacement(rng, threshold_k, margin) for _ in range(n_frames - 1)
        ),
        handshapes=handshapes,
    )


def random_script(
    rng: np.random.Generator,
    *,
    handshapes: Sequence[str],
    labels: Sequence[str] = ("SYNTH",),
    n_frames: int | None = None,
    threshold_k: float = DEFAULT_THRESHOLD_K,
    margin: float = DEFAULT_MARGIN,
    scene: str = "scene0",
    session: str = "synth",
    seed: int | None = None,
) -> MotionScript:
    """Draw a valid script with single and compound directions.

    Args:
        rng: Source of randomness
        handshapes: Codes to draw handshape pairs from
        labels: Glosses to draw the sign label from
        n_frames: Fixed frame count, or None for 1 to 12 frames
        threshold_k: Classification threshold the script must respect
        margin: Minimum distance of every component from the threshold
        scene: Scene name of the generated video
        session: Session name of the generated video
        seed: Seed for keypoint scores (drawn from ``rng`` if omitted)

    Returns:
        A script that passes ``validate(threshold_k, margin)``
    """
    codes = sorted(handshapes)
    if not codes:
        error_msg = "random_script needs at least one handshape code"
        raise ValueError(error_msg)
    n = n_frames
    if n is None:
        n = int(rng.integers(1, MAX_SCRIPT_FRAMES + 1))

    def pair() -> tuple[str, str]:
        first, second = rng.choice(len(codes), size=2)
        return codes[int(first)], codes[int(second)]

    dominant = random_hand(rng, n, threshold_k, margin, pair())
    ndh_shapes = pair() if rng.random() < 0.5 else None
    non_dominant = random_hand(rng, n, threshold_k, margin, ndh_shapes)
    ratios = np.round(rng.uniform(0.0, 1.0, size=n), MOUTH_RATIO_DECIMALS)
    script = MotionScript(
        dominant=dominant,
        non_dominant=non_dominant,
        mouth_ratios=tuple(float(r) for r in ratios),
        dominant_hand="right" if rng.random() < 0.8 else "left",
        label=str(labels[int(rng.integers(len(labels)))]),
        session=session,
        scene=scene,
        seed=int(rng.integers(2**31)) if seed is None else seed,
    )
    script.validate(threshold_k, margin)
    return script
