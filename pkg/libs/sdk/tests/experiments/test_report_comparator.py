import json

import pytest

from charp_sdk.comparators import ReportComparator, read_records


def write(path, records):
    path.write_text("".join(json.dumps(r) + "\n" for r in records), encoding="utf-8")
    return path


def record(id_, verdict="pass", seconds=0.1):
    return {"id": id_, "kind": "cartier", "verdict": verdict, "tables": {"ranks": [3, 3]}, "timings": {"seconds": seconds}}


def test_timings_are_ignored(tmp_path):
    a = write(tmp_path / "a.jsonl", [record("x", seconds=0.1), record("y")])
    b = write(tmp_path / "b.jsonl", [record("x", seconds=9.0), record("y", seconds=2.0)])
    result = ReportComparator().compare(a, b)
    assert result["are_equivalent"]
    assert result["summary"] == ["Reports are equivalent once timings are ignored."]
    assert result["details"]["record_counts"] == {"file1": 2, "file2": 2}


def test_changed_verdict_is_reported(tmp_path):
    a = write(tmp_path / "a.jsonl", [record("x")])
    b = write(tmp_path / "b.jsonl", [record("x", verdict="fail")])
    result = ReportComparator().compare(a, b, verbose_diff_level=1)
    assert not result["are_equivalent"]
    assert any("Changed at" in line and "verdict" in line for line in result["summary"])
    assert result["details"]["diff"]


def test_different_ids_are_named(tmp_path):
    a = write(tmp_path / "a.jsonl", [record("x")])
    b = write(tmp_path / "b.jsonl", [record("x"), record("y")])
    result = ReportComparator().compare(a, b)
    assert not result["are_equivalent"]
    assert result["summary"][0] == "Experiment ids differ: ['x'] vs ['x', 'y']"


def test_ignored_fields_are_configurable(tmp_path):
    a = write(tmp_path / "a.jsonl", [record("x")])
    b = write(tmp_path / "b.jsonl", [record("x", verdict="fail")])
    assert ReportComparator(ignored_fields=("timings", "verdict")).compare(a, b)["are_equivalent"]


def test_read_records_skips_blank_lines(tmp_path):
    path = tmp_path / "r.jsonl"
    path.write_text('{"id": "x"}\n\n{"id": "y"}\n', encoding="utf-8")
    assert [r["id"] for r in read_records(path)] == ["x", "y"]


def test_read_records_names_the_bad_line(tmp_path):
    path = tmp_path / "r.jsonl"
    path.write_text('{"id": "x"}\nnot json\n', encoding="utf-8")
    with pytest.raises(ValueError, match=":2: not a JSON record"):
        read_records(path)
    path.write_text("[1, 2]\n", encoding="utf-8")
    with pytest.raises(ValueError, match="expected a JSON object"):
        read_records(path)


def test_missing_file(tmp_path):
    with pytest.raises(OSError, match="Could not read report file"):
        read_records(tmp_path / "nope.jsonl")
