"""
Root pytest configuration file for aslphono tests.

This module provides session-scoped fixtures and utilities that are shared
across all test modules: the bundled role table and handshape catalog,
default stage configurations, factory fixtures and environment isolation.
"""

import os
from unittest.mock import patch

import pytest

from aslphono.fuse.config import FusionConfig
from aslphono.ingest.annotations import load_handshape_catalog
from aslphono.models.keypoints import load_role_table
from aslphono.phono.config import PhonoConfig
from aslphono.synth.generator import generate_sample
from aslphono.utils.env import ENV_PREFIX
from tests.fixtures.phono_samples import fixture_samples
from tests.utils.factories import (
    AnnotationRecordFactory,
    MotionScriptFactory,
    PhonoSampleFactory,
    SkeletonFrameFactory,
    ViewFrameFactory,
)


def pytest_addoption(parser):
    """Add command-line options for tests."""
    parser.addoption(
        "--run-slow",
        action="store_true",
        default=False,
        help="Run the throughput suites over large synthetic corpora",
    )


def pytest_collection_modifyitems(config, items):
    """Skip slow tests unless explicitly requested."""
    if config.getoption("--run-slow"):
        return
    skip_slow = pytest.mark.skip(reason="Need --run-slow option to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


# ============================================================================
# Session-Scoped Configuration Fixtures
# ============================================================================


@pytest.fixture(scope="session")
def role_table():
    """
    Session-scoped fixture providing the bundled keypoint role table.

    Returns:
        RoleTable: BODY_25 / face-70 / hand-21 roles
    """
    return load_role_table()


@pytest.fixture(scope="session")
def handshape_catalog():
    """
    Session-scoped fixture providing the bundled handshape codes.

    Returns:
        frozenset[str]: Valid ASLLRP handshape codes
    """
    return load_handshape_catalog()


@pytest.fixture(scope="session")
def default_configs():
    """
    Session-scoped fixture providing the default stage configurations.

    Returns:
        Dict[str, Any]: ``fusion`` and ``phono`` configs
    """
    return {"fusion": FusionConfig(), "phono": PhonoConfig()}


@pytest.fixture(scope="session")
def phono_fixture():
    """
    Session-scoped fixture providing the 10-sample phonological fixture.

    Returns:
        List[PhonoSample]: Samples over four labels, 20 frames in total
    """
    return fixture_samples()


# ============================================================================
# Environment Fixtures
# ============================================================================


@pytest.fixture(autouse=True)
def isolated_environment():
    """
    Run every test without ``ASLPHONO_*`` variables and undo any it sets.

    The CLI copies its options into the environment, so this keeps tests
    from leaking configuration into each other.
    """
    with patch.dict(os.environ, {}, clear=False) as env:
        for name in [key for key in env if key.startswith(ENV_PREFIX)]:
            env.pop(name)
        yield env


# ============================================================================
# Factory-Based Fixtures
# ============================================================================


@pytest.fixture
def make_view_frame():
    """
    Factory fixture for creating single-camera frames.

    Example:
        def test_side(make_view_frame):
            frame = make_view_frame("side", 20)
            assert frame.frame_index == 20
    """
    return ViewFrameFactory.create


@pytest.fixture
def make_skeleton_frame():
    """
    Factory fixture for creating normalized 3D skeleton frames.

    Example:
        def test_missing(make_skeleton_frame):
            frame = make_skeleton_frame(missing={"face": [51]})
            assert frame.score("face", 51) == 0.0
    """
    return SkeletonFrameFactory.create


@pytest.fixture
def make_annotation():
    """Factory fixture for creating annotation records."""
    return AnnotationRecordFactory.create


@pytest.fixture
def make_phono_sample():
    """Factory fixture for creating phonological samples from per-frame rows."""
    return PhonoSampleFactory.from_rows


@pytest.fixture
def make_script():
    """Factory fixture for creating motion scripts."""
    return MotionScriptFactory.create


@pytest.fixture
def generated_sample():
    """
    A synthetic three-frame sample: right-handed, palm facing front, moving up.

    Returns:
        GeneratedSample: Full-rate views, annotation and expected attributes
    """
    return generate_sample(MotionScriptFactory.create())
