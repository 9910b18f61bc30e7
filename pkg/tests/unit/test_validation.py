"""Tests for dataset document checks."""

import copy

import pytest

from aslphono.fuse.config import FusionConfig
from aslphono.models.records import Sample3D, SkippedSample
from aslphono.utils.io import write_json
from aslphono.validation import (
    ValidationTask,
    check_phono_document,
    check_sample3d_document,
    validate_document,
)
from tests.utils.factories import SampleMetaFactory, SkeletonFrameFactory


@pytest.fixture
def sample3d_document(role_table):
    sample = Sample3D(
        meta=SampleMetaFactory.create(frame_start=0, frame_end=40),
        frames=tuple(SkeletonFrameFactory.create(i) for i in range(3)),
    )
    return sample.to_document(role_table)


@pytest.fixture
def phono_document(phono_fixture):
    return phono_fixture[2].to_document()


def task_for(path, document, kind, **overrides):
    values = {
        "path": path,
        "sample_id": "BOOK_ses1_scene1_c1_0-40",
        "label": document.get("label", "BOOK"),
        "kind": kind,
        "indexed_frames": len(document.get("frames", [])),
        "fusion": FusionConfig(),
    }
    values.update(overrides)
    return ValidationTask(**values)


class TestSample3DDocument:
    def test_builder_output_is_valid(self, sample3d_document, role_table):
        assert check_sample3d_document(sample3d_document, role_table) == []

    def test_median_frames_skip_the_width_check(self, sample3d_document, role_table):
        frame = sample3d_document["frames"][1]
        frame["normalized_by"] = "median"
        frame["body"]["x"][5] = 2.0
        assert check_sample3d_document(sample3d_document, role_table) == []

    def test_shoulder_width(self, sample3d_document, role_table):
        sample3d_document["frames"][1]["body"]["x"][5] = 0.9
        problems = check_sample3d_document(sample3d_document, role_table)
        assert len(problems) == 1
        assert problems[0].startswith("frame 1: shoulder width")

    def test_missing_joint_not_zeroed(self, sample3d_document, role_table):
        sample3d_document["frames"][0]["face"]["score"][3] = 0.0
        problems = check_sample3d_document(sample3d_document, role_table)
        assert problems == [
            "frame 0: face: Missing keypoint jaw_3 has non-zero coordinates"
        ]

    def test_unknown_normalization(self, sample3d_document, role_table):
        sample3d_document["frames"][2]["normalized_by"] = "pixels"
        problems = check_sample3d_document(sample3d_document, role_table)
        assert problems == ["frame 2: unknown normalized_by 'pixels'"]

    def test_frame_outside_segment(self, sample3d_document, role_table):
        sample3d_document["frame_end"] = 1
        problems = check_sample3d_document(sample3d_document, role_table)
        assert problems == ["3 frames in a 2-frame segment"]

    def test_frame_count_follows_stride(self, sample3d_document, role_table):
        assert check_sample3d_document(sample3d_document, role_table, stride=20) == []
        sample3d_document["frame_end"] = 30
        problems = check_sample3d_document(sample3d_document, role_table, stride=20)
        assert problems == ["3 frames, expected 2 for segment 0-30 at stride 20"]

    def test_source_frame_numbers_are_rejected(self, sample3d_document, role_table):
        for position, frame in enumerate(sample3d_document["frames"]):
            frame["frame_index"] = position * 20
        problems = check_sample3d_document(sample3d_document, role_table)
        assert problems == [
            "frame 1: frame_index is 20",
            "frame 2: frame_index is 40",
        ]

    def test_score_out_of_range(self, sample3d_document, role_table):
        sample3d_document["frames"][2]["body"]["score"][0] = 1.5
        problems = check_sample3d_document(sample3d_document, role_table)
        assert problems == ["frame 2: body: Keypoint score out of range for nose: 1.5"]

    def test_renamed_keypoints(self, sample3d_document, role_table):
        sample3d_document["frames"][0]["body"]["name"][0] = "snout"
        problems = check_sample3d_document(sample3d_document, role_table)
        assert problems == ["frame 0: body names differ from the role table"]

    def test_wrong_group_size(self, sample3d_document, role_table):
        hand = sample3d_document["frames"][0]["left_hand"]
        for key in ("name", "score", "x", "y", "z"):
            del hand[key][-1]
        problems = check_sample3d_document(sample3d_document, role_table)
        assert problems == ["frame 0: left_hand has 20 keypoints, expected 21"]

    def test_schema_errors(self, sample3d_document, role_table):
        del sample3d_document["frames"][0]["face"]
        problems = check_sample3d_document(sample3d_document, role_table)
        assert len(problems) == 1
        assert problems[0].startswith("schema:")


class TestPhonoDocument:
    def test_fixture_is_valid(self, phono_fixture):
        for sample in phono_fixture:
            assert check_phono_document(sample.to_document()) == []

    def test_non_canonical_direction(self, phono_document):
        phono_document["frames"][1]["dh_orientation"]["value"] = "front_right"
        problems = check_phono_document(phono_document)
        assert problems == ["frame 1: dh_orientation 'front_right' is not canonical"]

    def test_unknown_direction_label(self, phono_document):
        phono_document["frames"][1]["dh_movement"]["value"] = "sideways"
        assert "not canonical" in check_phono_document(phono_document)[0]

    def test_unscored_value(self, phono_document):
        phono_document["frames"][0]["dh_orientation"]["score"] = 0.0
        problems = check_phono_document(phono_document)
        assert problems == ["frame 0: dh_orientation has score 0 but value 'front'"]

    def test_unscored_mouth(self, phono_document):
        phono_document["frames"][2]["mouth_opening"]["value"] = 0.4
        problems = check_phono_document(phono_document)
        assert problems == ["frame 2: mouth_opening has score 0 but value 0.4"]

    def test_mouth_must_be_numeric(self, phono_document):
        phono_document["frames"][0]["mouth_opening"]["value"] = "wide"
        problems = check_phono_document(phono_document)
        assert problems == ["frame 0: mouth_opening must be a finite number"]

    def test_too_many_frames(self, phono_document):
        phono_document["frame_end"] = 1
        problems = check_phono_document(phono_document)
        assert problems[0] == "3 frames in a 2-frame segment"

    def test_frames_numbered_in_order(self, phono_document):
        assert check_phono_document(phono_document, stride=20) == []
        phono_document["frames"][2]["frame_index"] = 7
        problems = check_phono_document(phono_document, stride=20)
        assert problems == ["frame 2: frame_index is 7"]

    def test_first_frame_movement(self, phono_document):
        phono_document["frames"][0]["ndh_movement"]["value"] = "up"
        phono_document["frames"][0]["ndh_movement"]["score"] = 1.0
        problems = check_phono_document(phono_document)
        assert len(problems) == 1
        assert problems[0].startswith("schema:")


class TestValidateDocument:
    def test_valid(self, tmp_path, phono_document):
        path = tmp_path / "sample.json"
        write_json(path, phono_document)
        assert validate_document(task_for(path, phono_document, "phono")) == []

    def test_problems_become_issues(self, tmp_path, sample3d_document):
        broken = copy.deepcopy(sample3d_document)
        broken["frames"][0]["normalized_by"] = "pixels"
        path = tmp_path / "sample.json"
        write_json(path, broken)

        issues = validate_document(task_for(path, broken, "sample3d"))

        assert [issue.category for issue in issues] == ["Invalid3D"]
        assert issues[0].label == "BOOK"

    def test_index_disagreement(self, tmp_path, phono_document):
        path = tmp_path / "sample.json"
        write_json(path, phono_document)
        task = task_for(path, phono_document, "phono", indexed_frames=7, label="TREE")

        issues = validate_document(task)

        assert [issue.category for issue in issues] == [
            "IndexMismatch",
            "IndexMismatch",
        ]
        assert "index lists 7 frames" in issues[0].message

    @pytest.mark.parametrize("content", ["{", "[1, 2]"])
    def test_unreadable_document(self, tmp_path, content):
        path = tmp_path / "sample.json"
        path.write_text(content, encoding="utf-8")
        outcome = validate_document(task_for(path, {}, "phono"))
        assert isinstance(outcome, SkippedSample)
        assert outcome.category == "MalformedDocument"
