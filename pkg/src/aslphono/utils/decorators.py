import logging
from collections.abc import Callable
from functools import wraps
from typing import Any, Protocol, TypeVar

from aslphono.exceptions import DataError
from aslphono.models.records import SkippedSample

logger = logging.getLogger(__name__)

R = TypeVar("R")


class SampleTask(Protocol):
    """Anything a per-sample worker receives: it must identify its sample."""

    @property
    def sample_id(self) -> str: ...

    @property
    def label(self) -> str: ...


def collect_sample_errors(
    stage: str,
) -> Callable[[Callable[..., R]], Callable[..., R | SkippedSample]]:
    """
    Decorator turning per-sample failures into ``SkippedSample`` outcomes.

    ``DataError`` is logged as a warning and reported under its category.
    Anything else is logged with its traceback at DEBUG and reported as
    ``Internal`` so one bad sample never aborts a whole run.

    Args:
        stage: Name of the pipeline stage for log messages (e.g. "build-3d").
    """

    def decorator(func: Callable[..., R]) -> Callable[..., R | SkippedSample]:
        @wraps(func)
        def wrapper(task: SampleTask, *args: Any, **kwargs: Any) -> R | SkippedSample:
            try:
                return func(task, *args, **kwargs)
            except DataError as err:
                logger.warning(
                    f"{stage}: skipping {task.sample_id} ({err.category}): {err}"
                )
                return SkippedSample(
                    sample_id=task.sample_id,
                    label=task.label,
                    category=err.category,
                    message=str(err),
                )
            except Exception as err:  # noqa: BLE001 - reported as an Internal skip
                logger.error(f"{stage}: unexpected error on {task.sample_id}: {err}")
                logger.debug(
                    f"Full exception details for {task.sample_id}:", exc_info=True
                )
                return SkippedSample(
                    sample_id=task.sample_id,
                    label=task.label,
                    category="Internal",
                    message=str(err),
                )

        return wrapper

    return decorator
