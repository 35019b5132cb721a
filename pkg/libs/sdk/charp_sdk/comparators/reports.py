import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple, Union

from charp_core.comparators import Comparator
from charp_core.types import Record
from deepdiff import DeepDiff

log = logging.getLogger(__name__)

# Fields that legitimately differ between replays of the same plan.
DEFAULT_IGNORED_FIELDS = ("timings",)
MAX_SUMMARY_VALUE = 150


def read_records(file_path: Union[str, Path]) -> List[Record]:
    """
    Reads a jsonlines report file, skipping blank lines.

    Raises:
        OSError: If the file cannot be read.
        ValueError: If a line is not a JSON object; the message names the line.
    """
    path = Path(file_path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise OSError(f"Could not read report file {path}: {e}") from e
    records: List[Record] = []
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            raise ValueError(f"{path}:{number}: not a JSON record: {e}") from e
        if not isinstance(record, dict):
            raise ValueError(f"{path}:{number}: expected a JSON object, got {type(record).__name__}")
        records.append(record)
    return records


def _shorten(value: Any) -> str:
    text = str(value)
    return text if len(text) <= MAX_SUMMARY_VALUE else text[:MAX_SUMMARY_VALUE] + "..."


def summarize_diff(diff: DeepDiff) -> List[str]:
    """One human-readable line per difference."""
    lines: List[str] = []
    for diff_type, changes in diff.items():
        entries = changes.items() if isinstance(changes, dict) else ((str(c), None) for c in changes)
        for path, detail in entries:
            if diff_type == "values_changed":
                lines.append(f"  ~ Changed at '{path}': from '{detail['old_value']}' to '{detail['new_value']}'")
            elif diff_type == "type_changes":
                lines.append(f"  ! Type changed at '{path}': from {detail['old_type']} to {detail['new_type']}")
            elif diff_type in ("dictionary_item_added", "iterable_item_added"):
                lines.append(f"  + Added at '{path}': {_shorten(detail)}")
            elif diff_type in ("dictionary_item_removed", "iterable_item_removed"):
                lines.append(f"  - Removed at '{path}': {_shorten(detail)}")
            else:
                lines.append(f"  * {diff_type} at '{path}': {_shorten(detail)}")
    return lines


class ReportComparator(Comparator):
    """
    Compares two jsonlines report files record by record.

    Records are compared in file order, with replay-dependent fields (wall
    clock and cache counters under `timings`) removed first. Two runs of the
    same plan are equivalent exactly when every computed value, verdict and
    witness agrees.
    """

    def __init__(self, ignored_fields: Sequence[str] = DEFAULT_IGNORED_FIELDS):
        self.ignored_fields = tuple(ignored_fields)

    def _strip(self, records: List[Record]) -> List[Record]:
        return [{k: v for k, v in r.items() if k not in self.ignored_fields} for r in records]

    def _diff(self, records1: List[Record], records2: List[Record]) -> Tuple[bool, DeepDiff]:
        diff = DeepDiff(
            self._strip(records1),
            self._strip(records2),
            ignore_order=False,
            report_repetition=True,
            verbose_level=2,
        )
        return not bool(diff), diff

    def compare(self, file_path1: Path, file_path2: Path, **kwargs: Any) -> Dict[str, Any]:
        """
        Compares two report files.

        Args:
            verbose_diff_level: 0 gives only the summary, 1 also puts the
                DeepDiff dictionary under `details["diff"]`.
        """
        verbose_diff_level = int(kwargs.get("verbose_diff_level", 0))
        records1, records2 = read_records(file_path1), read_records(file_path2)
        ids1, ids2 = [r.get("id") for r in records1], [r.get("id") for r in records2]
        log.debug(f"Comparing {len(records1)} records of {file_path1} with {len(records2)} of {file_path2}")

        are_equivalent, diff = self._diff(records1, records2)
        summary: List[str] = []
        if ids1 != ids2:
            summary.append(f"Experiment ids differ: {ids1} vs {ids2}")
        if are_equivalent:
            summary.append("Reports are equivalent once timings are ignored.")
        else:
            summary.append("Report differences found:")
            summary.extend(
                summarize_diff(diff) or ["  Differences found but not summarized; use verbose_diff_level >= 1."]
            )

        details: Dict[str, Any] = {"record_counts": {"file1": len(records1), "file2": len(records2)}}
        if verbose_diff_level >= 1:
            details["diff"] = json.loads(diff.to_json()) if diff else {}
        return {
            "files": {"file1": str(file_path1), "file2": str(file_path2)},
            "comparison_params": {"ignored_fields": list(self.ignored_fields)},
            "are_equivalent": are_equivalent,
            "summary": summary,
            "details": details,
        }
