"""Tests for pose-document parsing."""

import io
import json

import numpy as np
import pytest

from aslphono.exceptions import MalformedDocument, MissingView, WrongCardinality
from aslphono.ingest.views import (
    emit_view_document,
    load_view,
    parse_view_frames,
    view_document_path,
)
from aslphono.utils.io import write_json
from tests.utils.factories import PoseDocumentFactory, ViewFrameFactory


class TestParseViewFrames:
    def test_single_frame_document(self):
        document = PoseDocumentFactory.create()
        frames = parse_view_frames(json.dumps(document), "frontal", frame_index=40)

        assert len(frames) == 1
        frame = frames[0]
        assert frame.view == "frontal"
        assert frame.frame_index == 40
        assert frame.group("body").shape == (25, 3)
        assert frame.group("face").shape == (70, 3)
        assert frame.group("left_hand").shape == (21, 3)
        assert frame.body[2].tolist() == [102.0, 204.0, 0.9]

    def test_accepts_streams_and_bytes(self):
        text = json.dumps(PoseDocumentFactory.create())
        from_stream = parse_view_frames(io.StringIO(text), "side")
        from_bytes = parse_view_frames(text.encode(), "side")
        assert np.array_equal(from_stream[0].face, from_bytes[0].face)

    def test_video_document_is_sorted(self):
        document = PoseDocumentFactory.video(range(3))
        document["frames"].reverse()
        frames = parse_view_frames(document, "frontal")
        assert [f.frame_index for f in frames] == [0, 1, 2]

    def test_absent_groups_are_zero_filled(self):
        body = PoseDocumentFactory.person()["pose_keypoints_2d"]
        person = {"pose_keypoints_2d": body, "face_keypoints_2d": []}
        frame = parse_view_frames({"people": [person]}, "frontal")[0]

        assert frame.face.shape == (70, 3)
        assert not frame.face.any()
        assert not frame.right_hand.any()

    def test_no_person_gives_all_missing_frame(self):
        frame = parse_view_frames({"people": []}, "side")[0]
        assert not frame.body.any()

    def test_only_first_person_is_used(self):
        second = PoseDocumentFactory.person()
        second["pose_keypoints_2d"] = [1.0] * 75
        document = {"people": [PoseDocumentFactory.person(), second]}
        frame = parse_view_frames(document, "frontal")[0]
        assert frame.body[0, 0] == 100.0

    def test_missing_joints_are_zeroed(self):
        person = PoseDocumentFactory.person()
        person["pose_keypoints_2d"][3:6] = [50.0, 60.0, 0.0]
        frame = parse_view_frames({"people": [person]}, "frontal")[0]
        assert frame.body[1].tolist() == [0.0, 0.0, 0.0]

    def test_wrong_cardinality(self):
        person = PoseDocumentFactory.person()
        person["hand_left_keypoints_2d"] = [0.0] * 60
        with pytest.raises(WrongCardinality, match="left_hand has 60 values"):
            parse_view_frames({"people": [person]}, "frontal")

    @pytest.mark.parametrize(
        "document",
        [
            "{not json",
            "[1, 2, 3]",
            {"people": "nobody"},
            {"people": [{"pose_keypoints_2d": ["a"] * 75}]},
            {"frames": {"0": {}}},
            {"frames": [{"frame_index": -1}]},
            {"frames": [{"frame_index": 0}, {"frame_index": 0}]},
        ],
    )
    def test_malformed_documents(self, document):
        with pytest.raises(MalformedDocument):
            parse_view_frames(document, "frontal")

    def test_scores_outside_unit_interval(self):
        person = PoseDocumentFactory.person()
        person["pose_keypoints_2d"][2] = 1.5
        with pytest.raises(MalformedDocument, match="scores outside"):
            parse_view_frames({"people": [person]}, "frontal")

    def test_unknown_view(self):
        with pytest.raises(ValueError, match="Unknown view"):
            parse_view_frames(PoseDocumentFactory.create(), "overhead")


class TestEmitViewDocument:
    def test_values_survive_exactly(self):
        frames = ViewFrameFactory.sequence(
            "side", range(2), body=np.full((25, 3), 0.1 + 0.2)
        )
        document = json.loads(json.dumps(emit_view_document(frames)))
        parsed = parse_view_frames(document, "side")

        assert document["view"] == "side"
        for before, after in zip(frames, parsed, strict=True):
            assert after.frame_index == before.frame_index
            assert np.array_equal(after.body, before.body)
            assert np.array_equal(after.right_hand, before.right_hand)


class TestLoadView:
    def test_per_video_layout(self, tmp_path, role_table):
        path = view_document_path(tmp_path, "ses1", "scene1")
        write_json(path, PoseDocumentFactory.video(range(5)))

        frames = load_view(tmp_path, "ses1", "scene1", "frontal", role_table)
        assert [f.frame_index for f in frames] == [0, 1, 2, 3, 4]

    def test_per_frame_layout(self, tmp_path, role_table):
        frame_dir = tmp_path / "ses2" / "scene1"
        for index in (2, 0, 1):
            write_json(
                frame_dir / f"scene1_{index:012d}_keypoints.json",
                PoseDocumentFactory.create(),
            )
        write_json(frame_dir / "notes_keypoints.json", {})

        frames = load_view(tmp_path, "ses2", "scene1", "side", role_table)
        assert [f.frame_index for f in frames] == [0, 1, 2]
        assert all(f.view == "side" for f in frames)

    def test_missing_view(self, tmp_path, role_table):
        with pytest.raises(MissingView, match="scene9"):
            load_view(tmp_path, "ses1", "scene9", "side", role_table)
