"""Exceptions raised by the aslphono pipeline.

Every data-dependent failure derives from :class:`DataError` and carries a
``category`` used to group skipped samples in run summaries.
"""


class AslPhonoError(Exception):
    """Base class for all aslphono errors."""

    category = "Error"


class DataError(AslPhonoError):
    """Raised when input data or geometry cannot be processed."""

    category = "DataError"


class MalformedDocument(DataError):
    """Raised when a pose document cannot be parsed."""

    category = "MalformedDocument"


class WrongCardinality(DataError):
    """Raised when a keypoint group has the wrong number of keypoints."""

    category = "WrongCardinality"


class MalformedCatalog(DataError):
    """Raised when the annotation catalog cannot be parsed."""

    category = "MalformedCatalog"


class NonIntegerStride(DataError):
    """Raised when source/target frame rates do not give a positive integer stride."""

    category = "NonIntegerStride"


class MissingView(DataError):
    """Raised when the pose document of a view is absent for a sample."""

    category = "MissingView"


class ViewOutOfRange(DataError):
    """Raised when a sign segment exceeds the frames available in a view."""

    category = "ViewOutOfRange"


class LengthMismatch(DataError):
    """Raised when frontal and side views disagree after slicing."""

    category = "LengthMismatch"


class MissingShoulder(DataError):
    """Raised when a shoulder keypoint is missing from a frame."""

    category = "MissingShoulder"


class DegenerateWidth(DataError):
    """Raised when the shoulder width is too small to normalize by."""

    category = "DegenerateWidth"


class UnnormalizableSample(DataError):
    """Raised when no frame of a sample has a usable shoulder width."""

    category = "UnnormalizableSample"


class DegeneratePlane(DataError):
    """Raised when palm keypoints are collinear or coincident."""

    category = "DegeneratePlane"


class DegenerateMouth(DataError):
    """Raised when the mouth corners coincide."""

    category = "DegenerateMouth"


class InvalidAnnotation(DataError):
    """Raised when an annotation does not match the sample it annotates."""

    category = "InvalidAnnotation"


class EmptyDataset(DataError):
    """Raised when a statistic is requested over no samples."""

    category = "EmptyDataset"


class InsufficientData(DataError):
    """Raised when there are too few frames to estimate associations."""

    category = "InsufficientData"


class InfeasibleScript(DataError):
    """Raised when a synthetic motion script cannot be realized."""

    category = "InfeasibleScript"
