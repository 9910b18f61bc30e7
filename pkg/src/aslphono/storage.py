"""On-disk layout of the datasets, reports and synthetic corpora.

A dataset directory looks like::

    <out>/index.json            kind + one entry per written sample
    <out>/samples/<id>.json     one document per sample
    <out>/skipped.csv           samples dropped, with category and message
    <out>/run_summary.json      counts and parameters of the run

Every document is written with the same serializer so identical inputs
give identical bytes.
"""

import logging
from collections.abc import Iterable, Iterator
from pathlib import Path
from typing import Any, Literal

import pandas as pd
from pydantic import Field, ValidationError

from .exceptions import MalformedDocument
from .ingest.annotations import CATALOG_COLUMNS, OPTIONAL_COLUMNS, AnnotationRecord
from .ingest.views import ViewFrame2D, emit_view_document, view_document_path
from .models.base import DatasetModel
from .models.records import PhonoSample, Sample3D, SkippedSample
from .stats.correlation import CorrelationMatrix
from .stats.report import StatsReport
from .utils.io import read_json, write_json

logger = logging.getLogger(__name__)

SAMPLES_DIR = "samples"
INDEX_FILE = "index.json"
SKIPPED_FILE = "skipped.csv"
RUN_SUMMARY_FILE = "run_summary.json"
STATS_JSON = "stats.json"
STATS_CSV = "stats.csv"
CORRELATION_CSV = "correlation.csv"
CORRELATION_JSON = "correlation.json"
ANNOTATIONS_FILE = "annotations.csv"
FRONTAL_DIR = "frontal"
SIDE_DIR = "side"
EXPECTED_DIR = "expected"

SKIPPED_COLUMNS = ("sample_id", "label", "category", "message")

DatasetKind = Literal["sample3d", "phono"]
SAMPLE3D: DatasetKind = "sample3d"
PHONO: DatasetKind = "phono"


class IndexEntry(DatasetModel):
    """One written sample, as listed in ``index.json``."""

    sample_id: str
    label: str
    file: str
    frames: int = Field(ge=1)


class DatasetIndex(DatasetModel):
    kind: DatasetKind
    samples: list[IndexEntry]


class RunSummary(DatasetModel):
    """Machine-readable outcome of one command."""

    command: str
    processed: int = 0
    written: int = 0
    skipped: int = 0
    skipped_by_category: dict[str, int] = Field(default_factory=dict)
    median_width_frames: int = 0
    parameters: dict[str, Any] = Field(default_factory=dict)
    passed: bool = True


def sample_path(dataset_dir: Path, sample_id: str) -> Path:
    return dataset_dir / SAMPLES_DIR / f"{sample_id}.json"


def write_sample_document(
    dataset_dir: Path, sample_id: str, label: str, document: dict[str, Any]
) -> IndexEntry:
    """Write one sample document and return its index entry."""
    path = sample_path(dataset_dir, sample_id)
    write_json(path, document)
    return IndexEntry(
        sample_id=sample_id,
        label=label,
        file=path.relative_to(dataset_dir).as_posix(),
        frames=len(document["frames"]),
    )


def write_index(
    dataset_dir: Path, kind: DatasetKind, entries: Iterable[IndexEntry]
) -> DatasetIndex:
    """Write ``index.json``, entries ordered by sample id."""
    index = DatasetIndex(
        kind=kind, samples=sorted(entries, key=lambda entry: entry.sample_id)
    )
    write_json(dataset_dir / INDEX_FILE, index.to_document())
    return index


def read_index(dataset_dir: Path) -> DatasetIndex | None:
    """Parse ``index.json`` if the directory has one.

    Raises:
        MalformedDocument: If the index exists but cannot be parsed
    """
    path = dataset_dir / INDEX_FILE
    if not path.is_file():
        return None
    try:
        return DatasetIndex.from_document(read_json(path))
    except (ValueError, ValidationError) as err:
        error_msg = f"{path} is not a valid dataset index: {err}"
        raise MalformedDocument(error_msg) from err


def write_skipped(dataset_dir: Path, skipped: Iterable[SkippedSample]) -> None:
    """Write the skipped-samples report (header only when nothing was skipped)."""
    rows = [item.to_document() for item in skipped]
    table = pd.DataFrame(rows, columns=list(SKIPPED_COLUMNS))
    dataset_dir.mkdir(parents=True, exist_ok=True)
    table.to_csv(dataset_dir / SKIPPED_FILE, index=False, lineterminator="\n")


def summarize_skipped(skipped: Iterable[SkippedSample]) -> dict[str, int]:
    """Count skipped samples per category, categories in sorted order."""
    counts: dict[str, int] = {}
    for item in skipped:
        counts[item.category] = counts.get(item.category, 0) + 1
    return dict(sorted(counts.items()))


def write_run_summary(out_dir: Path, summary: RunSummary) -> None:
    write_json(out_dir / RUN_SUMMARY_FILE, summary.to_document())


def dataset_documents(dataset_dir: Path) -> Iterator[tuple[Path, Any]]:
    """Yield ``(path, document)`` for every sample of a dataset.

    Samples listed in ``index.json`` are read in index order; without an
    index every ``samples/*.json`` file is read in name order.

    Raises:
        MalformedDocument: If a document is not valid JSON
    """
    index = read_index(dataset_dir)
    if index is not None:
        paths = [dataset_dir / entry.file for entry in index.samples]
    else:
        paths = sorted((dataset_dir / SAMPLES_DIR).glob("*.json"))
    for path in paths:
        try:
            yield path, read_json(path)
        except (OSError, ValueError) as err:
            error_msg = f"Cannot read {path}: {err}"
            raise MalformedDocument(error_msg) from err


def load_3d_sample(path: Path) -> Sample3D:
    """Parse one stored 3D sample.

    Raises:
        MalformedDocument: If the file is unreadable or does not match the schema
    """
    try:
        return Sample3D.from_document(read_json(path))
    except (OSError, ValueError, KeyError, TypeError, ValidationError) as err:
        error_msg = f"{path} is not a valid 3D sample: {err}"
        raise MalformedDocument(error_msg) from err


def load_phono_samples(dataset_dir: Path) -> list[PhonoSample]:
    """Parse every phonological sample of a dataset.

    Raises:
        MalformedDocument: If a document does not match the schema
    """
    samples = []
    for path, document in dataset_documents(dataset_dir):
        try:
            samples.append(PhonoSample.from_document(document))
        except (ValidationError, KeyError, TypeError) as err:
            error_msg = f"{path} is not a valid phonological sample: {err}"
            raise MalformedDocument(error_msg) from err
    logger.info(f"Loaded {len(samples)} phonological samples from {dataset_dir}")
    return samples


def write_stats(out_dir: Path, report: StatsReport, matrix: CorrelationMatrix) -> None:
    """Write the statistics report and the correlation matrix, as JSON and CSV."""
    out_dir.mkdir(parents=True, exist_ok=True)
    write_json(out_dir / STATS_JSON, report.to_document())
    report.to_table().round(6).to_csv(
        out_dir / STATS_CSV, index=False, lineterminator="\n"
    )
    write_json(out_dir / CORRELATION_JSON, matrix.to_document())
    matrix.to_frame().round(6).to_csv(
        out_dir / CORRELATION_CSV, index_label="attribute", lineterminator="\n"
    )


def write_view_document(
    view_dir: Path, session: str, scene: str, frames: Iterable[ViewFrame2D]
) -> Path:
    """Write one video's frames in the per-video pose-document layout."""
    path = view_document_path(view_dir, session, scene)
    write_json(path, emit_view_document(frames))
    return path


def write_annotations(path: Path, records: Iterable[AnnotationRecord]) -> None:
    """Write records as an annotation catalog that ``load_annotations`` reads back."""
    rows = []
    for record in records:
        meta = record.meta
        rows.append(
            {
                "label": meta.label,
                "session": meta.session,
                "scene": meta.scene,
                "consultant": meta.consultant,
                "frame_start": meta.frame_start,
                "frame_end": meta.frame_end,
                "initial_handshape": record.initial_handshape,
                "final_handshape": record.final_handshape,
                "dominant_hand": record.dominant_hand or "",
                "ndh_initial_handshape": record.ndh_initial_handshape or "",
                "ndh_final_handshape": record.ndh_final_handshape or "",
            }
        )
    table = pd.DataFrame(rows, columns=list(CATALOG_COLUMNS + OPTIONAL_COLUMNS))
    path.parent.mkdir(parents=True, exist_ok=True)
    table.to_csv(path, index=False, lineterminator="\n")
