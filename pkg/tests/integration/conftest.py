"""Configuration for integration tests.

Integration tests drive the ``aslphono`` command line in-process over
synthetic corpora written to temporary directories.
"""

import os
from unittest.mock import patch

import pytest
from click.testing import CliRunner

from aslphono import main


def pytest_configure(config):
    """Add integration marker."""
    config.addinivalue_line(
        "markers", "integration: mark test as exercising the command line end to end"
    )


def pytest_collection_modifyitems(config, items):
    """Mark everything collected from this directory as integration."""
    for item in items:
        if "tests/integration" in str(item.fspath).replace("\\", "/"):
            item.add_marker(pytest.mark.integration)


@pytest.fixture
def cli():
    """
    Invoke the ``aslphono`` group and return the click ``Result``.

    Example:
        def test_help(cli):
            assert cli("--help").exit_code == 0
    """
    runner = CliRunner()

    def invoke(*args, **kwargs):
        return runner.invoke(main, [str(arg) for arg in args], **kwargs)

    return invoke


@pytest.fixture(scope="module")
def synth_corpus(tmp_path_factory):
    """A nine-sample synthetic corpus written through the command line."""
    out_dir = tmp_path_factory.mktemp("corpus")
    args = ["synth", "--out", str(out_dir), "--seed", "7", "--count", "9"]
    args += ["--jobs", "1"]
    with patch.dict(os.environ):
        result = CliRunner().invoke(main, args)
    assert result.exit_code == 0, result.output
    return out_dir
