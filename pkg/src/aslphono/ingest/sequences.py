"""Sign segmentation and frame-rate reduction."""

import logging
from collections.abc import Sequence

from ..exceptions import LengthMismatch, NonIntegerStride, ViewOutOfRange
from .annotations import AnnotationRecord
from .views import ViewFrame2D

logger = logging.getLogger(__name__)

FramePair = tuple[ViewFrame2D, ViewFrame2D]


def frame_stride(source_fps: float, target_fps: float) -> int:
    """Number of source frames per kept frame.

    Raises:
        NonIntegerStride: Unless ``source_fps / target_fps`` is a positive integer
    """
    if target_fps <= 0 or source_fps < target_fps:
        error_msg = (
            f"Cannot reduce {source_fps} fps to {target_fps} fps: "
            "rates must satisfy source >= target > 0"
        )
        raise NonIntegerStride(error_msg)
    stride = source_fps / target_fps
    if not float(stride).is_integer():
        error_msg = f"{source_fps} fps / {target_fps} fps is not an integer stride"
        raise NonIntegerStride(error_msg)
    return int(stride)


def downsample_frames(
    frames: Sequence[ViewFrame2D], source_fps: float, target_fps: float
) -> list[ViewFrame2D]:
    """Keep frames at positions 0, stride, 2*stride, ...

    Args:
        frames: Frames in order
        source_fps: Capture rate
        target_fps: Desired rate

    Returns:
        The kept frames, in order
    """
    stride = frame_stride(source_fps, target_fps)
    return list(frames[::stride])


def _slice_view(
    frames: Sequence[ViewFrame2D], start: int, end: int, view: str
) -> list[ViewFrame2D]:
    if not frames or frames[0].frame_index > start or frames[-1].frame_index < end:
        available = (
            f"{frames[0].frame_index}-{frames[-1].frame_index}" if frames else "none"
        )
        error_msg = (
            f"Segment {start}-{end} exceeds the {view} view (frames {available})"
        )
        raise ViewOutOfRange(error_msg)
    return [frame for frame in frames if start <= frame.frame_index <= end]


def segment_and_pair(
    frontal: Sequence[ViewFrame2D],
    side: Sequence[ViewFrame2D],
    rec: AnnotationRecord,
    source_fps: float,
    target_fps: float,
) -> list[FramePair]:
    """Cut a sign out of both views, reduce its frame rate and pair the views.

    Downsampling is anchored at the sign's first frame so its onset is
    always kept.

    Args:
        frontal: Every frame of the frontal video, in order
        side: Every frame of the side video, in order
        rec: Annotation giving the sign's frame range
        source_fps: Capture rate
        target_fps: Desired rate

    Returns:
        ``(frontal, side)`` pairs, one per kept frame

    Raises:
        ViewOutOfRange: If either view does not cover the segment
        LengthMismatch: If the views disagree after slicing
        NonIntegerStride: If the rates do not give an integer stride
    """
    start, end = rec.meta.frame_start, rec.meta.frame_end
    front_kept = downsample_frames(
        _slice_view(frontal, start, end, "frontal"), source_fps, target_fps
    )
    side_kept = downsample_frames(
        _slice_view(side, start, end, "side"), source_fps, target_fps
    )
    if len(front_kept) != len(side_kept):
        error_msg = (
            f"{rec.sample_id}: frontal view has {len(front_kept)} frames, "
            f"side view has {len(side_kept)}"
        )
        raise LengthMismatch(error_msg)
    for front, side_frame in zip(front_kept, side_kept, strict=True):
        if front.frame_index != side_frame.frame_index:
            error_msg = (
                f"{rec.sample_id}: frontal frame {front.frame_index} paired with "
                f"side frame {side_frame.frame_index}"
            )
            raise LengthMismatch(error_msg)
    expected = (end - start) // frame_stride(source_fps, target_fps) + 1
    if len(front_kept) != expected:
        error_msg = (
            f"{rec.sample_id}: expected {expected} frames after downsampling, "
            f"got {len(front_kept)} (gaps in the source frames)"
        )
        raise LengthMismatch(error_msg)
    logger.debug(f"{rec.sample_id}: paired {len(front_kept)} frames")
    return list(zip(front_kept, side_kept, strict=True))
