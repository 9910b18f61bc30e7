"""Pairwise association between phonological attributes.

Association is measured with the bias-corrected Cramér's V over the frames of
all samples. Mouth opening is numeric and is binned into quantiles first.
"""

import logging
import math
from collections.abc import Sequence

import numpy as np
import pandas as pd
from pydantic import model_validator
from scipy.stats import chi2_contingency

from ..exceptions import InsufficientData
from ..models.base import DatasetModel
from ..models.constants import ATTRIBUTE_NAMES, DEFAULT_CORRELATION_BINS, MOUTH_OPENING
from ..models.records import PhonoSample

logger = logging.getLogger(__name__)

UNSCORED_MOUTH_BIN = -1


class CorrelationMatrix(DatasetModel):
    """Symmetric attribute association matrix with a unit diagonal."""

    attributes: list[str]
    values: list[list[float]]

    @model_validator(mode="after")
    def _check_shape(self) -> "CorrelationMatrix":
        size = len(self.attributes)
        if len(self.values) != size or any(len(row) != size for row in self.values):
            error_msg = f"Expected a {size}x{size} matrix"
            raise ValueError(error_msg)
        return self

    def value(self, first: str, second: str) -> float:
        i = self.attributes.index(first)
        j = self.attributes.index(second)
        return self.values[i][j]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.values, index=self.attributes, columns=self.attributes)


def cramers_v(first: pd.Series, second: pd.Series) -> float:
    """Bias-corrected Cramér's V of two categorical series.

    Returns 0 when either series takes a single value, or when the
    corrected table dimensions leave nothing to normalize by.
    """
    table = pd.crosstab(first, second)
    rows, columns = table.shape
    if rows < 2 or columns < 2:
        return 0.0
    counts = table.to_numpy()
    n = float(counts.sum())
    if n < 2:
        return 0.0
    chi2 = float(chi2_contingency(counts, correction=False)[0])
    phi2 = chi2 / n
    phi2_corrected = max(0.0, phi2 - (columns - 1) * (rows - 1) / (n - 1))
    rows_corrected = rows - (rows - 1) ** 2 / (n - 1)
    columns_corrected = columns - (columns - 1) ** 2 / (n - 1)
    denominator = min(columns_corrected - 1, rows_corrected - 1)
    if denominator <= 0:
        return 0.0
    return float(np.clip(math.sqrt(phi2_corrected / denominator), 0.0, 1.0))


def bin_numeric(values: pd.Series, bins: int) -> pd.Series:
    """Quantile-bin a numeric series, merging duplicate edges.

    A constant series becomes a single bin.
    """
    if values.nunique() < 2:
        return pd.Series(np.zeros(len(values), dtype=int), index=values.index)
    return pd.qcut(values, q=bins, labels=False, duplicates="drop")


def attribute_table(samples: Sequence[PhonoSample], bins: int) -> pd.DataFrame:
    """Frame-level attribute values, with mouth opening replaced by its bin.

    Frames with an unscored mouth opening get ``UNSCORED_MOUTH_BIN`` and do
    not take part in the quantile edges.
    """
    rows = []
    scored = []
    for sample in samples:
        for frame in sample.frames:
            rows.append({name: frame.attribute(name).value for name in ATTRIBUTE_NAMES})
            scored.append(frame.attribute(MOUTH_OPENING).score > 0)
    table = pd.DataFrame(rows, columns=list(ATTRIBUTE_NAMES))
    if table.empty:
        return table
    mask = pd.Series(scored, index=table.index)
    mouth = pd.Series(UNSCORED_MOUTH_BIN, index=table.index, dtype=int)
    if mask.any():
        values = table.loc[mask, MOUTH_OPENING].astype(float)
        mouth[mask] = bin_numeric(values, bins).astype(int)
    table[MOUTH_OPENING] = mouth
    return table


def attribute_correlation(
    samples: Sequence[PhonoSample], bins: int = DEFAULT_CORRELATION_BINS
) -> CorrelationMatrix:
    """Cramér's V between every pair of phonological attributes.

    Args:
        samples: Phonological samples; every frame is one observation
        bins: Number of quantile bins for mouth opening

    Returns:
        The symmetric matrix over all seven attributes

    Raises:
        InsufficientData: If there are fewer than two frames or ``bins < 2``
    """
    if bins < 2:
        error_msg = f"Mouth opening needs at least 2 bins, got {bins}"
        raise InsufficientData(error_msg)
    table = attribute_table(samples, bins)
    if len(table) < 2:
        error_msg = f"Need at least 2 frames to estimate associations, got {len(table)}"
        raise InsufficientData(error_msg)

    names = list(ATTRIBUTE_NAMES)
    size = len(names)
    matrix = np.eye(size)
    for i in range(size):
        for j in range(i + 1, size):
            matrix[i, j] = matrix[j, i] = cramers_v(table[names[i]], table[names[j]])

    logger.info(f"Attribute correlation over {len(table)} frames, {bins} mouth bins")
    return CorrelationMatrix(attributes=names, values=matrix.tolist())
