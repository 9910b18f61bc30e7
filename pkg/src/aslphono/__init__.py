import logging
import os
import sys
from collections.abc import Callable
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Any, TypeVar

import click
from dotenv import load_dotenv

from aslphono.utils.env import env_name, is_env_truthy
from aslphono.utils.logging import level_from_verbosity, setup_logging

try:
    __version__ = version("aslphono")
except PackageNotFoundError:
    # package is not installed
    __version__ = "0.0.0"

# Initialize logging with appropriate level
logging_level = logging.WARNING
if is_env_truthy(env_name("VERBOSE")):
    logging_level = logging.INFO

# Set up logging to STDOUT if ASLPHONO_LOGGING_STDOUT is set to true
logging_stream = (
    sys.stdout if is_env_truthy(env_name("LOGGING_STDOUT")) else sys.stderr
)

logger = setup_logging(logging_level, logging_stream)

F = TypeVar("F", bound=Callable[..., Any])

# Command-line option -> environment variable read by the config classes
OPTION_ENV_VARS: dict[str, str] = {
    "source_fps": "SOURCE_FPS",
    "target_fps": "TARGET_FPS",
    "z_scale": "Z_SCALE",
    "side_camera": "SIDE_CAMERA",
    "min_view_score": "MIN_VIEW_SCORE",
    "threshold_k": "THRESHOLD_K",
    "jobs": "JOBS",
    "seed": "SEED",
    "bins": "CORRELATION_BINS",
    "role_table": "ROLE_TABLE",
    "handshape_catalog": "HANDSHAPE_CATALOG",
}

EXISTING_DIR = click.Path(exists=True, file_okay=False, path_type=Path)
EXISTING_FILE = click.Path(exists=True, dir_okay=False, path_type=Path)
OUTPUT_DIR = click.Path(file_okay=False, path_type=Path)


def was_option_provided(ctx: click.Context, param_name: str) -> bool:
    return (
        ctx.get_parameter_source(param_name) != click.core.ParameterSource.DEFAULT_MAP
        and ctx.get_parameter_source(param_name)
        != click.core.ParameterSource.DEFAULT
    )


def export_options(ctx: click.Context) -> None:
    """Copy explicitly given options into the environment for downstream config."""
    for name, variable in OPTION_ENV_VARS.items():
        value = ctx.params.get(name)
        if value is not None and was_option_provided(ctx, name):
            os.environ[env_name(variable)] = str(value)


def rate_options(func: F) -> F:
    func = click.option(
        "--target-fps",
        type=float,
        help="Frame rate after downsampling (default: 3)",
    )(func)
    return click.option(
        "--source-fps",
        type=float,
        help="Frame rate of the pose documents (default: 60)",
    )(func)


def fusion_options(func: F) -> F:
    func = click.option(
        "--min-view-score",
        type=click.FloatRange(0.0, 1.0),
        help="Drop joints scoring below this in either view (default: 0)",
    )(func)
    func = click.option(
        "--side-camera",
        type=click.Choice(["signer_right", "signer_left"]),
        help="Side of the signer the side camera stands on (default: signer_right)",
    )(func)
    return click.option(
        "--z-scale",
        type=float,
        help="Side-view to frontal-view pixel ratio (default: 1.0)",
    )(func)


def threshold_option(func: F) -> F:
    return click.option(
        "--threshold-k",
        type=float,
        help="Direction threshold in shoulder widths (default: 0.30)",
    )(func)


def common_options(func: F) -> F:
    func = click.option(
        "--handshape-catalog",
        type=click.Path(exists=True, dir_okay=False),
        help="Custom handshape code list (default: bundled ASLLRP catalog)",
    )(func)
    func = click.option(
        "--role-table",
        type=click.Path(exists=True, dir_okay=False),
        help="Custom keypoint role table (default: bundled table)",
    )(func)
    return click.option(
        "--jobs",
        type=click.IntRange(min=1),
        help="Worker processes (default: number of CPUs)",
    )(func)


def _echo_summary(summary: Any) -> None:
    click.echo(
        f"{summary.command}: processed {summary.processed}, "
        f"written {summary.written}, skipped {summary.skipped}"
    )
    for category, count in summary.skipped_by_category.items():
        click.echo(f"  {category}: {count}")
    if summary.median_width_frames:
        click.echo(
            "  frames normalized by median shoulder width: "
            f"{summary.median_width_frames}"
        )


def _execute(ctx: click.Context, command: str, **kwargs: Any) -> None:
    export_options(ctx)

    from aslphono.exceptions import AslPhonoError
    from aslphono.pipeline import RunConfig, run

    try:
        config = RunConfig.from_env(command, **kwargs)
        summary = run(config)
    except ValueError as e:
        raise click.UsageError(str(e), ctx=ctx) from e
    except AslPhonoError as e:
        logger.error(f"{command} failed: {e}")
        click.echo(f"Error [{e.category}]: {e}", err=True)
        ctx.exit(1)
    except Exception as e:
        logger.error(f"{command} encountered an error: {e}", exc_info=True)
        sys.exit(1)

    _echo_summary(summary)
    if not summary.passed:
        ctx.exit(1)


@click.version_option(__version__, prog_name="aslphono")
@click.group()
@click.option(
    "-v",
    "--verbose",
    count=True,
    help="Increase verbosity (can be used multiple times)",
)
@click.option(
    "--env-file", type=click.Path(exists=True, dir_okay=False), help="Path to .env file"
)
def main(verbose: int, env_file: str | None) -> None:
    """aslphono - phonological attributes from dual-view sign-language poses

    Builds normalized 3D skeleton samples from frontal and side pose
    documents, derives per-frame handshape, palm orientation, hand movement
    and mouth opening, and reports dataset statistics.
    """
    current_logging_level = level_from_verbosity(
        verbose,
        very_verbose=is_env_truthy(env_name("VERY_VERBOSE"), "false"),
        verbose_env=is_env_truthy(env_name("VERBOSE"), "false"),
    )
    logging_stream = (
        sys.stdout if is_env_truthy(env_name("LOGGING_STDOUT")) else sys.stderr
    )

    global logger
    logger = setup_logging(current_logging_level, logging_stream)
    logger.debug(f"Logging level set to: {logging.getLevelName(current_logging_level)}")

    if env_file:
        logger.debug(f"Loading environment from file: {env_file}")
        load_dotenv(env_file, override=True)
    else:
        logger.debug(
            "Attempting to load environment from default .env file if it exists"
        )
        load_dotenv(override=True)


@main.command("build-3d")
@click.option("--front-dir", required=True, type=EXISTING_DIR, help="Frontal views")
@click.option("--side-dir", required=True, type=EXISTING_DIR, help="Side views")
@click.option(
    "--annotations", required=True, type=EXISTING_FILE, help="Annotation catalog"
)
@click.option("--out", "out_dir", required=True, type=OUTPUT_DIR, help="3D dataset")
@rate_options
@fusion_options
@common_options
@click.pass_context
def build_3d_command(
    ctx: click.Context,
    front_dir: Path,
    side_dir: Path,
    annotations: Path,
    out_dir: Path,
    **_: Any,
) -> None:
    """Fuse both views into normalized 3D skeleton samples."""
    _execute(
        ctx,
        "build-3d",
        front_dir=front_dir,
        side_dir=side_dir,
        annotations=annotations,
        out_dir=out_dir,
    )


@main.command("build-phono")
@click.option(
    "--input", "input_dir", required=True, type=EXISTING_DIR, help="3D dataset"
)
@click.option(
    "--annotations", required=True, type=EXISTING_FILE, help="Annotation catalog"
)
@click.option("--out", "out_dir", required=True, type=OUTPUT_DIR, help="Phono dataset")
@threshold_option
@common_options
@click.pass_context
def build_phono_command(
    ctx: click.Context,
    input_dir: Path,
    annotations: Path,
    out_dir: Path,
    **_: Any,
) -> None:
    """Derive per-frame phonological attributes from a 3D dataset."""
    _execute(
        ctx,
        "build-phono",
        input_dir=input_dir,
        annotations=annotations,
        out_dir=out_dir,
    )


@main.command("stats")
@click.option(
    "--input", "input_dir", required=True, type=EXISTING_DIR, help="Phono dataset"
)
@click.option(
    "--out", "out_dir", type=OUTPUT_DIR, help="Report directory (default: --input)"
)
@click.option("--bins", type=int, help="Quantile bins for mouth opening (default: 5)")
@common_options
@click.pass_context
def stats_command(
    ctx: click.Context, input_dir: Path, out_dir: Path | None, **_: Any
) -> None:
    """Write dataset statistics and the attribute correlation matrix."""
    _execute(ctx, "stats", input_dir=input_dir, out_dir=out_dir)


@main.command("validate")
@click.option(
    "--input", "input_dir", required=True, type=EXISTING_DIR, help="Dataset to check"
)
@click.option("--out", "out_dir", type=OUTPUT_DIR, help="Where to write the report")
@rate_options
@common_options
@click.pass_context
def validate_command(
    ctx: click.Context, input_dir: Path, out_dir: Path | None, **_: Any
) -> None:
    """Check a 3D or phonological dataset; exits 1 if any document is invalid."""
    _execute(ctx, "validate", input_dir=input_dir, out_dir=out_dir)


@main.command("synth")
@click.option(
    "--out", "out_dir", required=True, type=OUTPUT_DIR, help="Corpus directory"
)
@click.option("--seed", type=int, help="Random seed (default: 0)")
@click.option("--count", type=click.IntRange(min=0), default=20, help="Samples")
@click.option(
    "--frames",
    type=click.IntRange(min=1),
    help="Frames per sample (default: random, 1 to 12)",
)
@click.option(
    "--jitter",
    type=click.FloatRange(min=0.0),
    default=0.0,
    help="Uniform keypoint noise in shoulder widths",
)
@rate_options
@fusion_options
@threshold_option
@common_options
@click.pass_context
def synth_command(
    ctx: click.Context,
    out_dir: Path,
    count: int,
    frames: int | None,
    jitter: float,
    **_: Any,
) -> None:
    """Generate a synthetic corpus with known phonological attributes."""
    _execute(
        ctx, "synth", out_dir=out_dir, count=count, frames=frames, jitter=jitter
    )


__all__ = ["main", "__version__"]

if __name__ == "__main__":
    main()
