"""Annotation catalog and handshape code table.

The catalog is a delimited text table with a header row::

    label,session,scene,consultant,frame_start,frame_end,
    initial_handshape,final_handshape,dominant_hand

(shown wrapped; the header is a single line)

Optional columns ``ndh_initial_handshape`` and ``ndh_final_handshape`` give the
non-dominant hand handshapes of two-handed signs.

Native corpus gloss exports can be supported by converting them to this
table; ``load_annotations`` is the only entry point the pipeline uses.
"""

import io
import logging
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Literal

import pandas as pd
from cachetools import LRUCache, cached
from pydantic import ValidationError

from ..exceptions import MalformedCatalog
from ..models.base import DatasetModel
from ..models.constants import DEFAULT_DOMINANT_HAND
from ..models.records import SampleMeta, SkippedSample

logger = logging.getLogger(__name__)

DEFAULT_HANDSHAPE_CATALOG = "asllrp_handshapes.txt"

CATALOG_COLUMNS: tuple[str, ...] = (
    "label",
    "session",
    "scene",
    "consultant",
    "frame_start",
    "frame_end",
    "initial_handshape",
    "final_handshape",
    "dominant_hand",
)

# Non-dominant hand handshapes; blank for one-handed signs
OPTIONAL_COLUMNS: tuple[str, ...] = ("ndh_initial_handshape", "ndh_final_handshape")

HandSide = Literal["left", "right"]


class AnnotationRecord(DatasetModel):
    """One annotated sign occurrence."""

    meta: SampleMeta
    initial_handshape: str
    final_handshape: str
    dominant_hand: HandSide | None = None
    ndh_initial_handshape: str | None = None
    ndh_final_handshape: str | None = None

    @property
    def sample_id(self) -> str:
        return self.meta.sample_id

    @property
    def label(self) -> str:
        return self.meta.label

    @property
    def dominant_side(self) -> HandSide:
        """Dominant hand, defaulting to right when the annotation omits it."""
        return self.dominant_hand or DEFAULT_DOMINANT_HAND  # type: ignore[return-value]

    @property
    def non_dominant_side(self) -> HandSide:
        return "left" if self.dominant_side == "right" else "right"


@dataclass
class AnnotationLoadResult:
    """Records parsed from a catalog plus the rows that were skipped."""

    records: list[AnnotationRecord] = field(default_factory=list)
    skipped: list[SkippedSample] = field(default_factory=list)

    @property
    def skipped_count(self) -> int:
        return len(self.skipped)


@cached(cache=LRUCache(maxsize=8))
def load_handshape_catalog(path: str | None = None) -> frozenset[str]:
    """Load the set of valid handshape codes.

    Args:
        path: Optional path to a custom code list (one code per line,
            ``#`` comments allowed); the bundled table is used otherwise

    Returns:
        The valid codes
    """
    if path:
        text = Path(path).read_text(encoding="utf-8")
    else:
        text = (
            resources.files("aslphono.assets")
            .joinpath(DEFAULT_HANDSHAPE_CATALOG)
            .read_text(encoding="utf-8")
        )
    codes = [
        line.strip()
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    return frozenset(codes)


def _read_table(catalog: Path | str | io.TextIOBase, delimiter: str) -> pd.DataFrame:
    try:
        return pd.read_csv(
            catalog,
            sep=delimiter,
            dtype=str,
            keep_default_na=False,
            encoding="utf-8",
            skipinitialspace=True,
        )
    except pd.errors.EmptyDataError:
        return pd.DataFrame(columns=list(CATALOG_COLUMNS))
    except (pd.errors.ParserError, UnicodeDecodeError) as err:
        error_msg = f"Annotation catalog could not be parsed: {err}"
        raise MalformedCatalog(error_msg) from err


def _row_problem(
    values: dict[str, str], handshapes: frozenset[str]
) -> tuple[str, str] | None:
    """Return ``(category, message)`` if a catalog row must be skipped."""
    codes = [values["initial_handshape"], values["final_handshape"]]
    ndh_codes = [values["ndh_initial_handshape"], values["ndh_final_handshape"]]
    if any(ndh_codes) and not all(ndh_codes):
        return "InvalidAnnotation", "non-dominant handshapes must be given in pairs"
    unknown = [
        code for code in codes + [c for c in ndh_codes if c] if code not in handshapes
    ]
    if unknown:
        return "UnknownHandshape", f"unknown handshape code(s) {unknown}"
    if values["dominant_hand"].lower() not in ("", "left", "right"):
        return "InvalidAnnotation", f"invalid dominant_hand {values['dominant_hand']!r}"
    try:
        SampleMeta(
            label=values["label"],
            session=values["session"],
            scene=values["scene"],
            consultant=values["consultant"],
            frame_start=int(values["frame_start"]),
            frame_end=int(values["frame_end"]),
        )
    except (ValueError, ValidationError) as err:
        return "InvalidAnnotation", f"invalid sample metadata: {err}"
    return None


def load_annotations(
    catalog: Path | str | io.TextIOBase,
    *,
    handshapes: frozenset[str] | None = None,
    delimiter: str = ",",
) -> AnnotationLoadResult:
    """Parse the annotation catalog.

    Rows with unknown handshape codes, an invalid dominant hand or an invalid
    frame range are reported and skipped. A blank dominant hand defaults to
    right with a warning.

    Args:
        catalog: Path or text stream of the delimited table
        handshapes: Valid handshape codes (bundled catalog if omitted)
        delimiter: Column delimiter

    Returns:
        Parsed records and skipped rows, in file order

    Raises:
        MalformedCatalog: If the table cannot be parsed or lacks a column
    """
    handshapes = handshapes if handshapes is not None else load_handshape_catalog()
    table = _read_table(catalog, delimiter)
    table.columns = [str(column).strip() for column in table.columns]
    missing = [column for column in CATALOG_COLUMNS if column not in table.columns]
    if missing:
        error_msg = f"Annotation catalog is missing columns: {missing}"
        raise MalformedCatalog(error_msg)

    result = AnnotationLoadResult()
    for position, row in enumerate(table.to_dict("records"), start=2):
        values = {
            key: str(row.get(key, "")).strip()
            for key in CATALOG_COLUMNS + OPTIONAL_COLUMNS
        }
        row_id = f"row {position} ({values['label'] or '?'})"

        reason = _row_problem(values, handshapes)
        if reason is not None:
            category, message = reason
            logger.warning(f"Skipping annotation {row_id}: {message}")
            result.skipped.append(
                SkippedSample(
                    sample_id=row_id,
                    label=values["label"],
                    category=category,
                    message=message,
                )
            )
            continue

        meta = SampleMeta(
            label=values["label"],
            session=values["session"],
            scene=values["scene"],
            consultant=values["consultant"],
            frame_start=int(values["frame_start"]),
            frame_end=int(values["frame_end"]),
        )
        dominant = values["dominant_hand"].lower() or None
        if dominant is None:
            logger.warning(
                f"Annotation {meta.sample_id} has no dominant hand; assuming "
                f"{DEFAULT_DOMINANT_HAND}"
            )
        result.records.append(
            AnnotationRecord(
                meta=meta,
                initial_handshape=values["initial_handshape"],
                final_handshape=values["final_handshape"],
                dominant_hand=dominant,
                ndh_initial_handshape=values["ndh_initial_handshape"] or None,
                ndh_final_handshape=values["ndh_final_handshape"] or None,
            )
        )

    logger.info(
        f"Loaded {len(result.records)} annotations, skipped {result.skipped_count}"
    )
    return result
