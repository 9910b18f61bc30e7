"""Command orchestration: build-3d, build-phono, stats, validate and synth.

Each command fans per-sample work out over a process pool and collects the
results in input order, so the written files never depend on ``jobs``.
"""

import logging
import os
from collections.abc import Callable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, TypeVar

import numpy as np

from .exceptions import InvalidAnnotation, MalformedDocument
from .fuse.config import FusionConfig
from .fuse.reconstruction import NORMALIZED_BY_MEDIAN, reconstruct_sample
from .ingest.annotations import (
    AnnotationRecord,
    load_annotations,
    load_handshape_catalog,
)
from .ingest.sequences import frame_stride, segment_and_pair
from .ingest.views import load_view
from .models.constants import (
    DEFAULT_CORRELATION_BINS,
    DEFAULT_SOURCE_FPS,
    DEFAULT_TARGET_FPS,
    FRONTAL,
    SIDE,
)
from .models.keypoints import load_role_table
from .models.records import SkippedSample
from .phono.config import PhonoConfig
from .phono.extractor import extract_phono
from .stats.correlation import attribute_correlation
from .stats.report import dataset_stats
from .storage import (
    ANNOTATIONS_FILE,
    EXPECTED_DIR,
    FRONTAL_DIR,
    INDEX_FILE,
    PHONO,
    SAMPLE3D,
    SIDE_DIR,
    IndexEntry,
    RunSummary,
    load_3d_sample,
    load_phono_samples,
    read_index,
    summarize_skipped,
    write_annotations,
    write_index,
    write_run_summary,
    write_sample_document,
    write_skipped,
    write_stats,
    write_view_document,
)
from .synth.generator import generate_sample
from .synth.script import MotionScript, random_script
from .utils.decorators import collect_sample_errors
from .utils.env import env_name, get_env_float, get_env_int
from .validation import ValidationTask, validate_document

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

BUILD_3D = "build-3d"
BUILD_PHONO = "build-phono"
STATS = "stats"
VALIDATE = "validate"
SYNTH = "synth"
COMMANDS: tuple[str, ...] = (BUILD_3D, BUILD_PHONO, STATS, VALIDATE, SYNTH)

DEFAULT_SYNTH_COUNT = 20
DUPLICATE_SAMPLE = "DuplicateSample"


def default_jobs() -> int:
    return os.cpu_count() or 1


def run_pool(func: Callable[[T], R], items: Sequence[T], jobs: int) -> list[R]:
    """Apply ``func`` to every item, in a process pool when ``jobs > 1``.

    Results come back in the order of ``items`` whatever the pool does.
    """
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    chunksize = max(1, len(items) // (jobs * 4))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items, chunksize=chunksize))


@dataclass(frozen=True)
class RunConfig:
    """Everything one command needs: paths, rates and the stage configs."""

    command: str
    front_dir: Path | None = None
    side_dir: Path | None = None
    annotations: Path | None = None
    input_dir: Path | None = None
    out_dir: Path | None = None
    source_fps: float = DEFAULT_SOURCE_FPS
    target_fps: float = DEFAULT_TARGET_FPS
    jobs: int = field(default_factory=default_jobs)
    seed: int = 0
    count: int = DEFAULT_SYNTH_COUNT
    frames: int | None = None
    jitter: float = 0.0
    correlation_bins: int = DEFAULT_CORRELATION_BINS
    role_table: str | None = None
    handshape_catalog: str | None = None
    fusion: FusionConfig = field(default_factory=FusionConfig)
    phono: PhonoConfig = field(default_factory=PhonoConfig)

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            error_msg = f"Unknown command {self.command!r}; expected one of {COMMANDS}"
            raise ValueError(error_msg)
        if self.jobs < 1:
            error_msg = f"jobs must be >= 1, got {self.jobs}"
            raise ValueError(error_msg)
        if not (self.source_fps > 0 and self.target_fps > 0):
            error_msg = "Frame rates must be > 0"
            raise ValueError(error_msg)
        if self.count < 0:
            error_msg = f"count must be >= 0, got {self.count}"
            raise ValueError(error_msg)
        if self.frames is not None and self.frames < 1:
            error_msg = f"frames must be >= 1, got {self.frames}"
            raise ValueError(error_msg)
        if self.jitter < 0:
            error_msg = f"jitter must be >= 0, got {self.jitter}"
            raise ValueError(error_msg)

    def path(self, name: str) -> Path:
        """Return a path setting, which must be given and, for inputs, exist.

        Raises:
            ValueError: If the path is missing or an input does not exist
        """
        value = getattr(self, name)
        option = name.replace("_", "-")
        if value is None:
            error_msg = f"{self.command} needs --{option}"
            raise ValueError(error_msg)
        path = Path(value)
        if name != "out_dir" and not path.exists():
            error_msg = f"--{option} {path} does not exist"
            raise ValueError(error_msg)
        return path

    def parameters(self) -> dict[str, Any]:
        """Settings that shape the output, for run summaries.

        Paths and ``jobs`` are left out: they never change what is written.
        """
        return {
            "source_fps": self.source_fps,
            "target_fps": self.target_fps,
            "z_scale": self.fusion.z_scale,
            "side_camera": self.fusion.side_camera_side,
            "min_view_score": self.fusion.min_view_score,
            "threshold_k": self.phono.threshold_k,
            "seed": self.seed,
            "correlation_bins": self.correlation_bins,
        }

    @classmethod
    def from_env(cls, command: str, **kwargs: Any) -> "RunConfig":
        """Create a run configuration from ``ASLPHONO_*`` variables plus ``kwargs``.

        Keyword arguments (paths and synth settings) take precedence over the
        environment.

        Raises:
            ValueError: If a variable holds an invalid value
        """
        values: dict[str, Any] = {
            "source_fps": get_env_float(env_name("SOURCE_FPS"), DEFAULT_SOURCE_FPS),
            "target_fps": get_env_float(env_name("TARGET_FPS"), DEFAULT_TARGET_FPS),
            "jobs": get_env_int(env_name("JOBS"), default_jobs()),
            "seed": get_env_int(env_name("SEED"), 0),
            "correlation_bins": get_env_int(
                env_name("CORRELATION_BINS"), DEFAULT_CORRELATION_BINS
            ),
            "role_table": os.getenv(env_name("ROLE_TABLE")) or None,
            "handshape_catalog": os.getenv(env_name("HANDSHAPE_CATALOG")) or None,
            "fusion": FusionConfig.from_env(),
            "phono": PhonoConfig.from_env(),
        }
        values.update({key: val for key, val in kwargs.items() if val is not None})
        return cls(command=command, **values)


def _finish(
    cfg: RunConfig,
    out_dir: Path,
    processed: int,
    written: int,
    skipped: list[SkippedSample],
    median_width_frames: int = 0,
) -> RunSummary:
    write_skipped(out_dir, skipped)
    summary = RunSummary(
        command=cfg.command,
        processed=processed,
        written=written,
        skipped=len(skipped),
        skipped_by_category=summarize_skipped(skipped),
        median_width_frames=median_width_frames,
        parameters=cfg.parameters(),
    )
    write_run_summary(out_dir, summary)
    logger.info(
        f"{cfg.command}: processed {processed}, wrote {written}, "
        f"skipped {len(skipped)}"
    )
    return summary


#
# build-3d
#


@dataclass(frozen=True)
class Build3DTask:
    record: AnnotationRecord
    front_dir: Path
    side_dir: Path
    source_fps: float
    target_fps: float
    fusion: FusionConfig
    role_table: str | None = None

    @property
    def sample_id(self) -> str:
        return self.record.sample_id

    @property
    def label(self) -> str:
        return self.record.label


@collect_sample_errors(BUILD_3D)
def build_3d_sample(task: Build3DTask) -> dict[str, Any]:
    """Load, segment, fuse and normalize one sample; returns its document."""
    roles = load_role_table(task.role_table)
    meta = task.record.meta
    frontal = load_view(task.front_dir, meta.session, meta.scene, FRONTAL, roles)
    side = load_view(task.side_dir, meta.session, meta.scene, SIDE, roles)
    pairs = segment_and_pair(
        frontal, side, task.record, task.source_fps, task.target_fps
    )
    sample = reconstruct_sample(pairs, task.record, task.fusion, roles.sizes)
    return sample.to_document(roles)


def _unique_records(
    records: list[AnnotationRecord],
) -> tuple[list[AnnotationRecord], list[SkippedSample]]:
    """Drop repeated sample ids, keeping the first occurrence."""
    seen: set[str] = set()
    unique, duplicates = [], []
    for record in records:
        if record.sample_id in seen:
            duplicates.append(
                SkippedSample(
                    sample_id=record.sample_id,
                    label=record.label,
                    category=DUPLICATE_SAMPLE,
                    message="annotation repeats an earlier sample",
                )
            )
            continue
        seen.add(record.sample_id)
        unique.append(record)
    return unique, duplicates


def _load_catalog(
    cfg: RunConfig,
) -> tuple[list[AnnotationRecord], list[SkippedSample]]:
    handshapes = load_handshape_catalog(cfg.handshape_catalog)
    loaded = load_annotations(cfg.path("annotations"), handshapes=handshapes)
    records, duplicates = _unique_records(loaded.records)
    return records, loaded.skipped + duplicates


def build_3d(cfg: RunConfig) -> RunSummary:
    """Build the normalized 3D dataset from both views and the annotation catalog."""
    front_dir, side_dir = cfg.path("front_dir"), cfg.path("side_dir")
    out_dir = cfg.path("out_dir")
    frame_stride(cfg.source_fps, cfg.target_fps)
    roles = load_role_table(cfg.role_table)
    cfg.phono.check_bounds(roles.sizes)

    records, skipped = _load_catalog(cfg)
    # Samples of the same video are adjacent so each worker's view cache hits
    records.sort(
        key=lambda r: (r.meta.session, r.meta.scene, r.meta.frame_start, r.sample_id)
    )
    tasks = [
        Build3DTask(
            record=record,
            front_dir=front_dir,
            side_dir=side_dir,
            source_fps=cfg.source_fps,
            target_fps=cfg.target_fps,
            fusion=cfg.fusion,
            role_table=cfg.role_table,
        )
        for record in records
    ]
    outcomes = run_pool(build_3d_sample, tasks, cfg.jobs)

    entries = []
    by_median = 0
    for task, outcome in zip(tasks, outcomes, strict=True):
        if isinstance(outcome, SkippedSample):
            skipped.append(outcome)
            continue
        by_median += sum(
            frame["normalized_by"] == NORMALIZED_BY_MEDIAN
            for frame in outcome["frames"]
        )
        entries.append(
            write_sample_document(out_dir, task.sample_id, task.label, outcome)
        )
    write_index(out_dir, SAMPLE3D, entries)
    if by_median:
        logger.warning(
            f"{BUILD_3D}: {by_median} frames normalized by their sample's median "
            "shoulder width"
        )
    return _finish(cfg, out_dir, len(records), len(entries), skipped, by_median)


#
# build-phono
#


@dataclass(frozen=True)
class PhonoTask:
    path: Path
    sample_id: str
    label: str
    record: AnnotationRecord | None
    phono: PhonoConfig


@collect_sample_errors(BUILD_PHONO)
def build_phono_sample(task: PhonoTask) -> dict[str, Any]:
    """Derive the phonological attributes of one stored 3D sample."""
    if task.record is None:
        error_msg = f"No annotation for {task.sample_id}"
        raise InvalidAnnotation(error_msg)
    sample = load_3d_sample(task.path)
    return extract_phono(sample, task.record, task.phono).to_document()


def build_phono(cfg: RunConfig) -> RunSummary:
    """Build the phonological dataset from a 3D dataset and the annotation catalog."""
    input_dir, out_dir = cfg.path("input_dir"), cfg.path("out_dir")
    roles = load_role_table(cfg.role_table)
    cfg.phono.check_bounds(roles.sizes)

    index = read_index(input_dir)
    if index is None or index.kind != SAMPLE3D:
        error_msg = f"{input_dir} has no 3D dataset index"
        raise MalformedDocument(error_msg)
    records, skipped = _load_catalog(cfg)
    by_id = {record.sample_id: record for record in records}
    tasks = [
        PhonoTask(
            path=input_dir / entry.file,
            sample_id=entry.sample_id,
            label=entry.label,
            record=by_id.get(entry.sample_id),
            phono=cfg.phono,
        )
        for entry in index.samples
    ]
    outcomes = run_pool(build_phono_sample, tasks, cfg.jobs)

    entries = []
    for task, outcome in zip(tasks, outcomes, strict=True):
        if isinstance(outcome, SkippedSample):
            skipped.append(outcome)
            continue
        entries.append(
            write_sample_document(out_dir, task.sample_id, task.label, outcome)
        )
    write_index(out_dir, PHONO, entries)
    return _finish(cfg, out_dir, len(tasks), len(entries), skipped)


#
# stats
#


def compute_stats(cfg: RunConfig) -> RunSummary:
    """Write the statistics report and attribute correlation of a phono dataset.

    Raises:
        EmptyDataset: If the dataset holds no samples
        InsufficientData: If there are too few frames for the correlation
    """
    input_dir = cfg.path("input_dir")
    out_dir = cfg.out_dir or input_dir
    samples = load_phono_samples(input_dir)
    report = dataset_stats(samples)
    matrix = attribute_correlation(samples, cfg.correlation_bins)
    write_stats(out_dir, report, matrix)
    summary = RunSummary(
        command=cfg.command,
        processed=len(samples),
        written=len(samples),
        parameters=cfg.parameters(),
    )
    write_run_summary(out_dir, summary)
    return summary


#
# validate
#


def validate(cfg: RunConfig) -> RunSummary:
    """Check every document of a dataset against its schema and invariants.

    Problems are reported as skipped entries; the summary is written only
    when an output directory is given.
    """
    input_dir = cfg.path("input_dir")
    index = read_index(input_dir)
    if index is None:
        error_msg = f"{input_dir} has no {INDEX_FILE}"
        raise MalformedDocument(error_msg)
    stride = frame_stride(cfg.source_fps, cfg.target_fps)
    tasks = [
        ValidationTask(
            path=input_dir / entry.file,
            sample_id=entry.sample_id,
            label=entry.label,
            kind=index.kind,
            indexed_frames=entry.frames,
            fusion=cfg.fusion,
            role_table=cfg.role_table,
            stride=stride,
        )
        for entry in index.samples
    ]
    issues: list[SkippedSample] = []
    for outcome in run_pool(validate_document, tasks, cfg.jobs):
        if isinstance(outcome, SkippedSample):
            issues.append(outcome)
        else:
            issues.extend(outcome)
    summary = RunSummary(
        command=cfg.command,
        processed=len(tasks),
        skipped=len(issues),
        skipped_by_category=summarize_skipped(issues),
        parameters={"kind": index.kind, "stride": stride},
        passed=not issues,
    )
    if cfg.out_dir is not None:
        write_skipped(cfg.out_dir, issues)
        write_run_summary(cfg.out_dir, summary)
    logger.info(
        f"validate: {len(tasks)} {index.kind} documents, {len(issues)} issues"
    )
    return summary


#
# synth
#


@dataclass(frozen=True)
class SynthTask:
    script: MotionScript
    out_dir: Path
    source_fps: float
    target_fps: float
    fusion: FusionConfig
    phono: PhonoConfig
    role_table: str | None = None

    @property
    def sample_id(self) -> str:
        return f"{self.script.session}/{self.script.scene}"

    @property
    def label(self) -> str:
        return self.script.label


@collect_sample_errors(SYNTH)
def synth_sample(task: SynthTask) -> tuple[AnnotationRecord, dict[str, Any]]:
    """Generate one synthetic sample and write both of its views."""
    generated = generate_sample(
        task.script,
        task.fusion,
        task.phono,
        load_role_table(task.role_table),
        source_fps=task.source_fps,
        target_fps=task.target_fps,
    )
    session, scene = task.script.session, task.script.scene
    write_view_document(
        task.out_dir / FRONTAL_DIR, session, scene, generated.frontal
    )
    write_view_document(task.out_dir / SIDE_DIR, session, scene, generated.side)
    return generated.record, generated.expected.to_document()


def synth_scripts(cfg: RunConfig, handshapes: Sequence[str]) -> list[MotionScript]:
    """Draw the scripts of a synthetic corpus from ``cfg.seed``."""
    rng = np.random.default_rng(cfg.seed)
    labels = [f"SIGN{i:03d}" for i in range(max(1, cfg.count // 3))]
    scripts = []
    for i in range(cfg.count):
        script = random_script(
            rng,
            handshapes=handshapes,
            labels=labels,
            n_frames=cfg.frames,
            threshold_k=cfg.phono.threshold_k,
            scene=f"scene{i:05d}",
        )
        if cfg.jitter > 0:
            script = replace(script, jitter_amplitude=cfg.jitter)
        scripts.append(script)
    return scripts


def synth(cfg: RunConfig) -> RunSummary:
    """Write a synthetic corpus.

    The corpus holds both views, the annotation catalog, and under
    ``expected/`` the phonological dataset the pipeline must recover.
    """
    out_dir = cfg.path("out_dir")
    frame_stride(cfg.source_fps, cfg.target_fps)
    handshapes = sorted(load_handshape_catalog(cfg.handshape_catalog))
    scripts = synth_scripts(cfg, handshapes)
    tasks = [
        SynthTask(
            script=script,
            out_dir=out_dir,
            source_fps=cfg.source_fps,
            target_fps=cfg.target_fps,
            fusion=cfg.fusion,
            phono=cfg.phono,
            role_table=cfg.role_table,
        )
        for script in scripts
    ]
    outcomes = run_pool(synth_sample, tasks, cfg.jobs)

    records: list[AnnotationRecord] = []
    entries: list[IndexEntry] = []
    skipped: list[SkippedSample] = []
    expected_dir = out_dir / EXPECTED_DIR
    for outcome in outcomes:
        if isinstance(outcome, SkippedSample):
            skipped.append(outcome)
            continue
        record, document = outcome
        records.append(record)
        entries.append(
            write_sample_document(
                expected_dir, record.sample_id, record.label, document
            )
        )
    write_annotations(out_dir / ANNOTATIONS_FILE, records)
    write_index(expected_dir, PHONO, entries)
    return _finish(cfg, out_dir, len(tasks), len(records), skipped)


COMMAND_RUNNERS: dict[str, Callable[[RunConfig], RunSummary]] = {
    BUILD_3D: build_3d,
    BUILD_PHONO: build_phono,
    STATS: compute_stats,
    VALIDATE: validate,
    SYNTH: synth,
}


def run(cfg: RunConfig) -> RunSummary:
    """Run the command named by ``cfg.command``."""
    logger.debug(f"Running {cfg.command} with {cfg.jobs} job(s)")
    return COMMAND_RUNNERS[cfg.command](cfg)
