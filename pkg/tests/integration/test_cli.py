"""End-to-end tests of the command line over synthetic corpora."""

import json
import os
import shutil
import time
from unittest.mock import patch

import pytest
from click.testing import CliRunner

from aslphono import main
from aslphono.storage import read_index
from tests.utils.assertions import (
    assert_dataset_documents_identical,
    assert_trees_identical,
)


def read_document(path):
    return json.loads(path.read_text(encoding="utf-8"))


def build_args(corpus, out_dir, jobs=1):
    return [
        "build-3d",
        "--front-dir",
        corpus / "frontal",
        "--side-dir",
        corpus / "side",
        "--annotations",
        corpus / "annotations.csv",
        "--out",
        out_dir,
        "--jobs",
        jobs,
    ]


def phono_args(corpus, input_dir, out_dir, jobs=1):
    return [
        "build-phono",
        "--input",
        input_dir,
        "--annotations",
        corpus / "annotations.csv",
        "--out",
        out_dir,
        "--jobs",
        jobs,
    ]


def assert_recovers_expected(corpus, phono_dir):
    assert_dataset_documents_identical(corpus / "expected", phono_dir)


@pytest.fixture(scope="module")
def built(synth_corpus, tmp_path_factory):
    """3D and phono datasets built from the shared corpus, via the CLI."""
    root = tmp_path_factory.mktemp("built")
    runner = CliRunner()
    for args in (
        build_args(synth_corpus, root / "3d"),
        phono_args(synth_corpus, root / "3d", root / "phono"),
    ):
        with patch.dict(os.environ):
            result = runner.invoke(main, [str(arg) for arg in args])
        assert result.exit_code == 0, result.output
    return root


class TestSynth:
    def test_same_seed_same_corpus(self, cli, tmp_path):
        for name in ("a", "b"):
            result = cli(
                "synth", "--out", tmp_path / name, "--seed", 3, "--count", 4
            )
            assert result.exit_code == 0, result.output
            assert "synth: processed 4, written 4, skipped 0" in result.output

        assert_trees_identical(tmp_path / "a", tmp_path / "b")

    def test_seed_from_env_file(self, cli, tmp_path):
        env_file = tmp_path / "settings.env"
        env_file.write_text("ASLPHONO_SEED=5\n", encoding="utf-8")

        from_option = cli(
            "synth", "--out", tmp_path / "a", "--seed", 5, "--count", 3, "--jobs", 1
        )
        from_file = cli(
            "--env-file",
            env_file,
            "synth",
            "--out",
            tmp_path / "b",
            "--count",
            3,
            "--jobs",
            1,
        )

        assert from_option.exit_code == from_file.exit_code == 0
        assert_trees_identical(tmp_path / "a", tmp_path / "b")

    def test_fixed_frame_count(self, cli, tmp_path):
        result = cli(
            "synth", "--out", tmp_path, "--count", 5, "--frames", 2, "--jobs", 1
        )
        assert result.exit_code == 0, result.output
        index = read_index(tmp_path / "expected")
        assert [entry.frames for entry in index.samples] == [2] * 5


class TestRoundTrip:
    def test_recovers_expected_attributes(self, synth_corpus, built):
        assert_recovers_expected(synth_corpus, built / "phono")

    def test_summaries(self, built):
        summary = read_document(built / "3d" / "run_summary.json")
        assert summary["command"] == "build-3d"
        assert summary["written"] == 9
        assert summary["skipped_by_category"] == {}
        assert summary["median_width_frames"] == 0
        assert (built / "phono" / "skipped.csv").is_file()

    def test_worker_count_does_not_change_output(self, cli, synth_corpus, tmp_path):
        for jobs in (1, 2):
            result = cli(*build_args(synth_corpus, tmp_path / f"j{jobs}", jobs))
            assert result.exit_code == 0, result.output

        assert_trees_identical(tmp_path / "j1", tmp_path / "j2")

    def test_stats(self, cli, built, tmp_path):
        result = cli("stats", "--input", built / "phono", "--out", tmp_path)

        assert result.exit_code == 0, result.output
        report = read_document(tmp_path / "stats.json")
        assert report["overall"]["samples"] == 9
        assert (tmp_path / "correlation.csv").is_file()

    def test_stats_defaults_to_input_dir(self, cli, built, tmp_path):
        dataset = tmp_path / "phono"
        shutil.copytree(built / "phono", dataset)

        result = cli("stats", "--input", dataset)

        assert result.exit_code == 0, result.output
        assert (dataset / "stats.json").is_file()

    @pytest.mark.parametrize("dataset", ["3d", "phono"])
    def test_validate_builder_output(self, cli, built, tmp_path, dataset):
        result = cli("validate", "--input", built / dataset, "--out", tmp_path)
        assert result.exit_code == 0, result.output
        assert read_document(tmp_path / "run_summary.json")["passed"] is True


class TestFailures:
    def test_missing_side_view_is_skipped(self, cli, tmp_path):
        corpus = tmp_path / "corpus"
        assert cli("synth", "--out", corpus, "--count", 3, "--jobs", 1).exit_code == 0
        (corpus / "side" / "synth" / "scene00001.json").unlink()

        result = cli(*build_args(corpus, tmp_path / "3d"))

        assert result.exit_code == 0, result.output
        assert "written 2, skipped 1" in result.output
        assert "MissingView: 1" in result.output
        skipped = (tmp_path / "3d" / "skipped.csv").read_text(encoding="utf-8")
        assert "scene00001" in skipped

    def test_corrupted_document_fails_validation(self, cli, built, tmp_path):
        dataset = tmp_path / "phono"
        shutil.copytree(built / "phono", dataset)
        first = read_index(dataset).samples[0]
        document = read_document(dataset / first.file)
        document["frames"][0]["dh_orientation"]["score"] = 0.0
        (dataset / first.file).write_text(json.dumps(document), encoding="utf-8")

        result = cli("validate", "--input", dataset)

        assert result.exit_code == 1
        assert "InvalidPhono: 1" in result.output

    def test_stats_on_empty_dataset(self, cli, tmp_path):
        result = cli("stats", "--input", tmp_path)
        assert result.exit_code == 1
        assert "Error [" in result.output

    def test_invalid_environment_is_a_usage_error(self, cli, synth_corpus, tmp_path):
        env_file = tmp_path / "settings.env"
        env_file.write_text("ASLPHONO_THRESHOLD_K=steep\n", encoding="utf-8")

        result = cli(
            "--env-file",
            env_file,
            *phono_args(synth_corpus, synth_corpus / "expected", tmp_path / "p"),
        )

        assert result.exit_code == 2
        assert "ASLPHONO_THRESHOLD_K" in result.output

    def test_rate_without_integer_stride(self, cli, tmp_path):
        result = cli("synth", "--out", tmp_path, "--target-fps", 7, "--count", 1)
        assert result.exit_code == 1
        assert "NonIntegerStride" in result.output

    def test_unknown_side_camera(self, cli, tmp_path):
        result = cli("synth", "--out", tmp_path, "--side-camera", "overhead")
        assert result.exit_code == 2


def test_version(cli):
    result = cli("--version")
    assert result.exit_code == 0
    assert "aslphono" in result.output


@pytest.mark.slow
def test_large_corpus_throughput(cli, tmp_path):
    """A 300-sample corpus builds within a minute and is recovered exactly."""
    corpus = tmp_path / "corpus"
    assert cli("synth", "--out", corpus, "--seed", 11, "--count", 300).exit_code == 0

    start_time = time.time()
    assert cli(*build_args(corpus, tmp_path / "3d", jobs=4)).exit_code == 0
    result = cli(*phono_args(corpus, tmp_path / "3d", tmp_path / "phono", jobs=4))
    elapsed = time.time() - start_time

    assert result.exit_code == 0, result.output
    assert elapsed < 60.0
    assert_recovers_expected(corpus, tmp_path / "phono")
