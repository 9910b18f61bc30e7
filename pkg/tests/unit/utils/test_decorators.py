from dataclasses import dataclass

from aslphono.exceptions import DegenerateWidth
from aslphono.models.records import SkippedSample
from aslphono.utils.decorators import collect_sample_errors


@dataclass(frozen=True)
class DummyTask:
    sample_id: str = "BOOK_ses1_scene1_c1_0-40"
    label: str = "BOOK"
    value: int = 2


@collect_sample_errors("test-stage")
def double(task):
    return task.value * 2


@collect_sample_errors("test-stage")
def too_narrow(task):
    raise DegenerateWidth("shoulder width 0.0 <= 1e-06")


@collect_sample_errors("test-stage")
def broken(task):
    raise KeyError("right_hand")


def test_collect_sample_errors_passes_results_through():
    assert double(DummyTask(value=4)) == 8


def test_collect_sample_errors_reports_data_errors():
    outcome = too_narrow(DummyTask())

    assert isinstance(outcome, SkippedSample)
    assert outcome.sample_id == "BOOK_ses1_scene1_c1_0-40"
    assert outcome.label == "BOOK"
    assert outcome.category == "DegenerateWidth"
    assert "shoulder width" in outcome.message


def test_collect_sample_errors_reports_unexpected_errors_as_internal():
    outcome = broken(DummyTask())

    assert isinstance(outcome, SkippedSample)
    assert outcome.category == "Internal"
    assert "right_hand" in outcome.message


def test_collect_sample_errors_keeps_function_name():
    assert double.__name__ == "double"
