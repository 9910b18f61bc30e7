"""Input parsing: pose documents, the annotation catalog and sign segmentation."""

from .annotations import (
    AnnotationLoadResult,
    AnnotationRecord,
    load_annotations,
    load_handshape_catalog,
)
from .sequences import downsample_frames, frame_stride, segment_and_pair
from .views import (
    ViewFrame2D,
    emit_view_document,
    load_view,
    parse_view_frames,
    view_document_path,
)

__all__ = [
    "AnnotationLoadResult",
    "AnnotationRecord",
    "ViewFrame2D",
    "downsample_frames",
    "emit_view_document",
    "frame_stride",
    "load_annotations",
    "load_handshape_catalog",
    "load_view",
    "parse_view_frames",
    "segment_and_pair",
    "view_document_path",
]
