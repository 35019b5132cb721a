from pathlib import Path
from typing import Any, Dict

import pytest

from charp_core.comparators.base import Comparator


class SimpleComparator(Comparator):
    """Simple concrete implementation of the Comparator abstract class."""

    def compare(self, file_path1: Path, file_path2: Path, **kwargs: Any) -> Dict[str, Any]:
        same = file_path1.read_text() == file_path2.read_text()
        return {
            "files": {"file1": str(file_path1), "file2": str(file_path2)},
            "comparison_params": kwargs,
            "are_equivalent": same,
            "summary": ["Reports are equivalent" if same else "Reports differ"],
            "details": {},
        }


@pytest.fixture
def simple_comparator():
    """Fixture providing a SimpleComparator instance."""
    return SimpleComparator()


def test_comparator_interface(simple_comparator, tmp_path):
    file1 = tmp_path / "a.jsonl"
    file2 = tmp_path / "b.jsonl"
    file1.write_text('{"id": "x"}\n')
    file2.write_text('{"id": "x"}\n')

    result = simple_comparator.compare(file1, file2)

    assert result["are_equivalent"] is True
    assert result["files"] == {"file1": str(file1), "file2": str(file2)}

    file2.write_text('{"id": "y"}\n')
    result = simple_comparator.compare(file1, file2, ignored_fields=["timings"])
    assert result["are_equivalent"] is False
    assert result["comparison_params"] == {"ignored_fields": ["timings"]}


def test_comparator_subclass_abstractness():
    with pytest.raises(TypeError):
        Comparator()
