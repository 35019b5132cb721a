from pathlib import Path
from typing import Optional, Sequence, Union

from charp_core.emitters import Emitter
from charp_core.types import ExperimentReport

from .jsonlines import JsonLinesEmitter
from .table import TableEmitter

EMITTERS = {cls.format_name: cls for cls in (JsonLinesEmitter, TableEmitter)}


def get_emitter(format_name: str) -> Emitter:
    if format_name not in EMITTERS:
        raise ValueError(f"No emitter for format {format_name!r}; expected one of {', '.join(sorted(EMITTERS))}")
    return EMITTERS[format_name]()


def emit(
    reports: Sequence[ExperimentReport], format_name: str = "jsonlines", path: Optional[Union[str, Path]] = None
) -> str:
    """Renders reports in `format_name` and writes them to `path` when given."""
    return get_emitter(format_name).emit(reports, path)


__all__ = ["EMITTERS", "JsonLinesEmitter", "TableEmitter", "emit", "get_emitter"]
