"""Tests for the synthetic forward model, including the end-to-end oracle:
generated views must come back through the pipeline stages as exactly the
attributes they were generated from."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from aslphono.fuse.config import FusionConfig
from aslphono.fuse.reconstruction import reconstruct_sample, shoulder_width
from aslphono.ingest.sequences import segment_and_pair
from aslphono.ingest.views import ViewFrame2D
from aslphono.models.constants import KEYPOINT_GROUPS
from aslphono.models.geometry import Vector3
from aslphono.phono.attributes import palm_normal
from aslphono.phono.config import HandRoles, PhonoConfig
from aslphono.phono.extractor import extract_phono
from aslphono.storage import load_3d_sample
from aslphono.synth import generate_sample, hand_points, palm_basis, random_script
from aslphono.utils.io import dump_json, write_json
from tests.utils.assertions import assert_phono_matches

unit_vectors = (
    st.tuples(
        st.floats(-1.0, 1.0, allow_nan=False),
        st.floats(-1.0, 1.0, allow_nan=False),
        st.floats(-1.0, 1.0, allow_nan=False),
    )
    .filter(lambda v: np.linalg.norm(v) > 0.1)
    .map(lambda v: np.asarray(v) / np.linalg.norm(v))
)


def run_stages(generated, fusion_cfg=None, phono_cfg=None):
    fusion_cfg = fusion_cfg or FusionConfig()
    pairs = segment_and_pair(generated.frontal, generated.side, generated.record, 60, 3)
    sample = reconstruct_sample(pairs, generated.record, fusion_cfg)
    return sample, extract_phono(sample, generated.record, phono_cfg or PhonoConfig())


def scaled_views(frames, factor):
    """Same frames with every pixel coordinate multiplied by ``factor``."""
    return [
        ViewFrame2D(
            view=frame.view,
            frame_index=frame.frame_index,
            **{
                group: frame.group(group) * np.array([factor, factor, 1.0])
                for group in KEYPOINT_GROUPS
            },
        )
        for frame in frames
    ]


class TestGeometry:
    @given(unit_vectors)
    def test_palm_basis_is_orthonormal(self, unit):
        u, v = palm_basis(unit)
        assert np.linalg.norm(u) == pytest.approx(1.0)
        assert np.linalg.norm(v) == pytest.approx(1.0)
        assert np.dot(u, v) == pytest.approx(0.0, abs=1e-12)
        assert np.allclose(np.cross(u, v), unit)

    @pytest.mark.parametrize("side", ["left", "right"])
    @given(unit=unit_vectors)
    def test_hand_points_realize_the_normal(self, side, unit):
        roles = HandRoles()
        points = hand_points(np.array([0.2, 0.5, 0.3]), unit, side, 21, roles)
        W, L, I = (  # noqa: E741
            Vector3(*points[index])
            for index in (roles.wrist, roles.little_base, roles.index_base)
        )
        normal = palm_normal(W, L, I, side)
        assert np.allclose(normal.as_array(), unit)
        assert points[roles.middle_base].tolist() == pytest.approx([0.2, 0.5, 0.3])


class TestGenerateSample:
    def test_layout(self, generated_sample):
        frontal, side, record, expected = generated_sample

        assert len(frontal) == len(side) == 41
        assert record.meta.frame_end == 40
        assert record.sample_id == expected.meta.sample_id
        assert [f.frame_index for f in expected.frames] == [0, 1, 2]
        assert frontal[0].view == "frontal"
        assert side[0].view == "side"

    def test_scripted_frames_are_held_for_a_stride(self, generated_sample):
        frontal = generated_sample.frontal
        assert np.array_equal(frontal[0].right_hand, frontal[19].right_hand)
        assert not np.array_equal(frontal[19].right_hand, frontal[20].right_hand)

    def test_expected_attributes(self, generated_sample):
        expected = generated_sample.expected
        assert expected.column("dh_handshape") == ["B", "B", "5"]
        assert expected.column("dh_orientation") == ["front"] * 3
        assert expected.column("ndh_orientation") == ["left"] * 3
        assert expected.column("dh_movement") == ["none", "up", "up"]
        assert expected.column("ndh_movement") == ["none"] * 3
        assert expected.column("mouth_opening") == pytest.approx([0.1, 0.2, 0.3])

    def test_scores_come_from_seed(self, make_script):
        first = generate_sample(make_script(seed=1))
        again = generate_sample(make_script(seed=1))
        other = generate_sample(make_script(seed=2))

        assert np.array_equal(first.side[0].face, again.side[0].face)
        assert not np.array_equal(first.side[0].face, other.side[0].face)
        scores = first.frontal[0].body[:, 2]
        assert ((scores >= 0.6) & (scores <= 1.0)).all()

    def test_frame_start_offsets_the_segment(self, make_script):
        generated = generate_sample(make_script(frame_start=35))
        assert generated.record.meta.frame_start == 35
        assert len(generated.frontal) == 35 + 41
        _, phono = run_stages(generated)
        assert_phono_matches(phono, generated.expected)

    def test_jitter_moves_keypoints(self, make_script):
        still = generate_sample(make_script())
        shaken = generate_sample(make_script(jitter_amplitude=0.01))
        assert not np.array_equal(still.frontal[0].face, shaken.frontal[0].face)


class TestRoundTrip:
    def test_fixture_script(self, generated_sample):
        sample, phono = run_stages(generated_sample)
        assert_phono_matches(phono, generated_sample.expected)
        for frame in sample.frames:
            assert shoulder_width(frame) == pytest.approx(1.0, abs=1e-9)

    def test_random_scripts(self, handshape_catalog):
        rng = np.random.default_rng(20240601)
        for index in range(200):
            script = random_script(
                rng, handshapes=handshape_catalog, scene=f"scene{index:05d}"
            )
            generated = generate_sample(script)
            _, phono = run_stages(generated)
            assert_phono_matches(phono, generated.expected)

    @pytest.mark.parametrize(
        "fusion_cfg",
        [
            FusionConfig(side_camera_side="signer_left"),
            FusionConfig(z_scale=2.5),
            FusionConfig(side_camera_side="signer_left", z_scale=0.4),
        ],
    )
    def test_camera_set_ups(self, handshape_catalog, fusion_cfg):
        rng = np.random.default_rng(17)
        for _ in range(20):
            script = random_script(rng, handshapes=handshape_catalog)
            generated = generate_sample(script, fusion_cfg)
            _, phono = run_stages(generated, fusion_cfg)
            assert_phono_matches(phono, generated.expected)

    def test_other_threshold(self, handshape_catalog):
        phono_cfg = PhonoConfig(threshold_k=0.5)
        rng = np.random.default_rng(23)
        for _ in range(20):
            script = random_script(rng, handshapes=handshape_catalog, threshold_k=0.5)
            generated = generate_sample(script, phono_cfg=phono_cfg)
            _, phono = run_stages(generated, phono_cfg=phono_cfg)
            assert_phono_matches(phono, generated.expected)

    @pytest.mark.parametrize("factor", [0.5, 3.0, 17.0])
    def test_pixel_scale_does_not_matter(self, handshape_catalog, role_table, factor):
        rng = np.random.default_rng(31)
        for _ in range(10):
            script = random_script(rng, handshapes=handshape_catalog)
            generated = generate_sample(script)
            scaled = generated._replace(
                frontal=scaled_views(generated.frontal, factor),
                side=scaled_views(generated.side, factor),
            )
            reference_3d, reference_phono = run_stages(generated)
            scaled_3d, scaled_phono = run_stages(scaled)

            assert dump_json(scaled_3d.to_document(role_table)) == dump_json(
                reference_3d.to_document(role_table)
            )
            assert dump_json(scaled_phono.to_document()) == dump_json(
                reference_phono.to_document()
            )


class TestStoredRoundTrip:
    def test_stored_sample_gives_expected_document(
        self, handshape_catalog, role_table, tmp_path
    ):
        rng = np.random.default_rng(20240601)
        for index in range(50):
            script = random_script(
                rng, handshapes=handshape_catalog, scene=f"scene{index:05d}"
            )
            generated = generate_sample(script)
            sample, _ = run_stages(generated)
            path = tmp_path / f"{index}.json"
            write_json(path, sample.to_document(role_table))

            stored = load_3d_sample(path)
            phono = extract_phono(stored, generated.record, PhonoConfig())

            assert dump_json(phono.to_document()) == dump_json(
                generated.expected.to_document()
            )

    def test_scores_survive_storage(self, make_script):
        generated = generate_sample(make_script(seed=3))
        for frame in generated.frontal + generated.side:
            for group in KEYPOINT_GROUPS:
                scores = frame.group(group)[:, 2].tolist()
                assert scores == [round(score, 6) for score in scores]

    def test_random_mouth_ratios_have_three_decimals(self, handshape_catalog):
        rng = np.random.default_rng(5)
        for _ in range(20):
            script = random_script(rng, handshapes=handshape_catalog)
            for ratio in script.mouth_ratios:
                assert ratio == round(ratio, 3)
