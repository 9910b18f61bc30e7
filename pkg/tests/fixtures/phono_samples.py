"""Ten hand-written phonological samples over four labels.

``golden_stats.json`` next to this module holds their statistics report,
computed by hand.
"""

import json
from pathlib import Path
from typing import Any

from aslphono.models.records import PhonoSample
from tests.utils.factories import PhonoSampleFactory

GOLDEN_STATS = Path(__file__).with_name("golden_stats.json")

# Columns: dh handshape, ndh handshape, dh orientation, ndh orientation,
# dh movement, ndh movement, mouth opening (None = unscored)
Row = tuple[str, str, str, str, str, str, float | None]

FIXTURE: list[tuple[str, list[Row]]] = [
    ("A", [
        ("B", "none", "left", "none", "none", "none", 0.2),
        ("5", "none", "left_up", "none", "up", "none", 0.4),
    ]),
    ("A", [
        ("B", "none", "left", "none", "none", "none", 0.3),
    ]),
    ("A", [
        ("5", "none", "front", "none", "none", "none", 0.1),
        ("5", "none", "front", "none", "down", "none", 0.2),
        ("A", "none", "right", "none", "down", "none", None),
    ]),
    ("B", [
        ("A", "A", "body", "body", "none", "none", 0.5),
        ("S", "S", "body", "front", "left", "right", 0.7),
    ]),
    ("B", [
        ("A", "A", "body", "body", "none", "none", 0.6),
        ("S", "S", "down", "down", "left", "right", 0.6),
    ]),
    ("C", [
        ("1", "none", "up", "none", "none", "none", None),
    ]),
    ("C", [
        ("1", "none", "up", "none", "none", "none", 0.3),
        ("1", "none", "up_front", "none", "left_up", "none", 0.3),
        ("V", "none", "up_front", "none", "none", "none", 0.3),
    ]),
    ("D", [
        ("B", "B", "left", "right", "none", "none", 0.8),
        ("B", "B", "left", "right", "front", "front", 1.0),
    ]),
    ("D", [
        ("5", "5", "right_down", "left_down", "none", "none", 0.4),
    ]),
    ("D", [
        ("5", "5", "right", "left", "none", "none", 0.2),
        ("5", "5", "right", "left", "up", "up", 0.2),
        ("B", "B", "right", "left", "up", "up", 0.8),
    ]),
]  # fmt: skip

NAMES = (
    "dh_handshape",
    "ndh_handshape",
    "dh_orientation",
    "ndh_orientation",
    "dh_movement",
    "ndh_movement",
)


def fixture_samples() -> list[PhonoSample]:
    samples = []
    for position, (label, rows) in enumerate(FIXTURE):
        frames = [
            {**dict(zip(NAMES, row[:6], strict=True)), "mouth": row[6]}
            for row in rows
        ]
        samples.append(
            PhonoSampleFactory.from_rows(
                frames, label=label, scene=f"scene{position:02d}"
            )
        )
    return samples


def golden_stats() -> dict[str, Any]:
    return json.loads(GOLDEN_STATS.read_text(encoding="utf-8"))
