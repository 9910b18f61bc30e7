"""
Base model for every record written to or read from a dataset document.

This provides a standard interface for converting documents to models and
models back to documents with stable float precision.
"""

from typing import Any, TypeVar

from pydantic import BaseModel, ConfigDict

from .constants import FLOAT_PRECISION

T = TypeVar("T", bound="DatasetModel")


def round_floats(value: Any, digits: int = FLOAT_PRECISION) -> Any:
    """Recursively round every float in a JSON-like structure.

    ``-0.0`` is folded into ``0.0`` so equal values serialize identically.
    """
    if isinstance(value, float):
        rounded = round(value, digits)
        return 0.0 if rounded == 0.0 else rounded
    if isinstance(value, dict):
        return {key: round_floats(item, digits) for key, item in value.items()}
    if isinstance(value, list | tuple):
        return [round_floats(item, digits) for item in value]
    return value


class DatasetModel(BaseModel):
    """
    Base model for all dataset records.

    Models are immutable; ``to_document`` produces the JSON-ready mapping
    written to disk and ``from_document`` parses it back.
    """

    model_config = ConfigDict(frozen=True)

    @classmethod
    def from_document(cls: type[T], data: dict[str, Any], **kwargs: Any) -> T:
        """
        Convert a parsed document into a model instance.

        Args:
            data: The document contents
            **kwargs: Additional context parameters

        Returns:
            An instance of the model
        """
        return cls.model_validate(data)

    def to_document(self) -> dict[str, Any]:
        """
        Convert the model to a JSON-ready dictionary with rounded floats.

        Returns:
            A dictionary in the on-disk field order
        """
        return round_floats(self.model_dump(mode="python"))
