"""Dataset statistics over phonological samples."""

import logging
from collections.abc import Sequence

import pandas as pd
from pydantic import Field, model_validator

from ..exceptions import EmptyDataset
from ..models.base import DatasetModel
from ..models.constants import (
    CATEGORICAL_ATTRIBUTES,
    MOUTH_OPENING,
    MOVEMENT_ATTRIBUTES,
    NONE_VALUE,
)
from ..models.records import PhonoSample

logger = logging.getLogger(__name__)

SAMPLE_KEY = "_sample"
LABEL_KEY = "_label"
TABLE_COLUMNS = ("section", "quantity", "value", "mean", "min", "max")


class Summary(DatasetModel):
    """Mean, minimum and maximum of one quantity over a grouping."""

    mean: float
    min: float
    max: float

    @model_validator(mode="after")
    def _check_order(self) -> "Summary":
        # Tolerance for the mean of equal floats landing one ulp outside
        slack = 1e-9 * max(1.0, abs(self.max))
        if not (self.min - slack <= self.mean <= self.max + slack):
            error_msg = f"Expected min <= mean <= max, got {self}"
            raise ValueError(error_msg)
        return self

    @classmethod
    def of(cls, values: pd.Series) -> "Summary":
        return cls(
            mean=float(values.mean()),
            min=float(values.min()),
            max=float(values.max()),
        )


class OverallStats(DatasetModel):
    """Counts over the whole dataset."""

    samples: int = Field(ge=0)
    labels: int = Field(ge=0)
    frames: int = Field(ge=0)
    distinct_values: dict[str, int]


class StatsReport(DatasetModel):
    """Overall counts plus per-sample and per-label summaries."""

    overall: OverallStats
    per_sample: dict[str, Summary]
    per_label: dict[str, Summary]

    def to_table(self) -> pd.DataFrame:
        """Flatten into rows of ``section, quantity, value, mean, min, max``."""
        rows: list[dict[str, object]] = [
            {"section": "overall", "quantity": name, "value": value}
            for name, value in (
                ("samples", self.overall.samples),
                ("labels", self.overall.labels),
                ("frames", self.overall.frames),
            )
        ]
        rows.extend(
            {"section": "overall", "quantity": f"distinct_{name}", "value": value}
            for name, value in self.overall.distinct_values.items()
        )
        for section, summaries in (
            ("per_sample", self.per_sample),
            ("per_label", self.per_label),
        ):
            rows.extend(
                {
                    "section": section,
                    "quantity": name,
                    "mean": summary.mean,
                    "min": summary.min,
                    "max": summary.max,
                }
                for name, summary in summaries.items()
            )
        return pd.DataFrame(rows, columns=list(TABLE_COLUMNS))


def frames_table(samples: Sequence[PhonoSample]) -> pd.DataFrame:
    """One row per frame: sample position, label and every attribute value.

    Movement values of ``none`` become missing so distinct counts skip them.
    """
    rows = []
    for position, sample in enumerate(samples):
        for frame in sample.frames:
            row: dict[str, object] = {
                SAMPLE_KEY: position,
                LABEL_KEY: sample.meta.label,
            }
            for name in CATEGORICAL_ATTRIBUTES:
                value = frame.attribute(name).value
                if name in MOVEMENT_ATTRIBUTES and value == NONE_VALUE:
                    value = None
                row[name] = value
            mouth = frame.mouth_opening
            row[MOUTH_OPENING] = mouth.value if mouth.score > 0 else None
            rows.append(row)
    columns = [SAMPLE_KEY, LABEL_KEY, *CATEGORICAL_ATTRIBUTES, MOUTH_OPENING]
    table = pd.DataFrame(rows, columns=columns)
    table[MOUTH_OPENING] = table[MOUTH_OPENING].astype(float)
    return table


def dataset_stats(samples: Sequence[PhonoSample]) -> StatsReport:
    """Compute overall, per-sample and per-label statistics.

    Distinct movement counts ignore ``none``, so a sample without any
    detected movement counts 0. Mouth opening is summarized by the mean
    ratio of scored frames of each sample.

    Raises:
        EmptyDataset: If ``samples`` is empty
    """
    if not samples:
        error_msg = "Cannot compute statistics over an empty dataset"
        raise EmptyDataset(error_msg)

    frames = frames_table(samples)
    attributes = list(CATEGORICAL_ATTRIBUTES)

    overall = OverallStats(
        samples=len(samples),
        labels=int(frames[LABEL_KEY].nunique()),
        frames=len(frames),
        distinct_values={name: int(frames[name].nunique()) for name in attributes},
    )

    by_sample = frames.groupby(SAMPLE_KEY, sort=True)
    per_sample_values = by_sample[attributes].nunique()
    per_sample = {"frames": Summary.of(by_sample.size())}
    per_sample.update(
        {f"distinct_{name}": Summary.of(per_sample_values[name]) for name in attributes}
    )
    mouth_means = by_sample[MOUTH_OPENING].mean().dropna()
    if not mouth_means.empty:
        per_sample[MOUTH_OPENING] = Summary.of(mouth_means)

    by_label = frames.groupby(LABEL_KEY, sort=True)
    per_label_values = by_label[attributes].nunique()
    per_label = {
        "samples": Summary.of(by_label[SAMPLE_KEY].nunique()),
        "frames": Summary.of(by_label.size()),
    }
    per_label.update(
        {f"distinct_{name}": Summary.of(per_label_values[name]) for name in attributes}
    )

    logger.info(
        f"Statistics over {overall.samples} samples, {overall.labels} labels, "
        f"{overall.frames} frames"
    )
    return StatsReport(overall=overall, per_sample=per_sample, per_label=per_label)
