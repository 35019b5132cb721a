import json

import pytest
from charp_core.types import ErrorInfo, ExperimentOutcome, ExperimentReport, ExperimentSpec, Mode, Verdict

from charp_sdk.emitters import emit, get_emitter


@pytest.fixture
def reports():
    passed = ExperimentReport.from_outcome(
        ExperimentSpec(id="cartier-A1", kind="cartier", params={"n": 1}),
        3,
        ExperimentOutcome(checks={"h0_free_rank": True, "h1_free_rank": True}, tables={"ranks": [3, 3]}),
        "test",
        timings={"seconds": 0.5, "cache": None},
    )
    failed = ExperimentReport.from_outcome(
        ExperimentSpec(id="bk-x2", kind="bk", params={"n": 1, "f": "x0^2"}),
        3,
        ExperimentOutcome(checks={"twisted_equals_wedge": False, "euler_characteristics_agree": True}),
        "test",
    )
    broken = ExperimentReport(
        id="singular",
        kind="cartier",
        parameters={"n": 1, "g": "x0^2"},
        prime=3,
        mode=Mode.ASSERT,
        verdict=Verdict.ERROR,
        engine_version="test",
        error=ErrorInfo("non_smooth", "V(x0^2) is singular"),
    )
    return [passed, failed, broken]


def test_jsonlines_is_byte_stable(reports):
    assert emit(reports) == emit(list(reports))


def test_jsonlines_records(reports):
    lines = emit(reports, "jsonlines").splitlines()
    assert len(lines) == 3
    records = [json.loads(line) for line in lines]
    assert list(records[0]) == sorted(records[0])
    assert records[0]["verdict"] == "pass"
    assert records[1]["verdict"] == "fail"
    assert records[2]["error"] == {"kind": "non_smooth", "message": "V(x0^2) is singular", "details": {}}
    assert [ExperimentReport.from_record(r) for r in records] == reports


def test_emit_writes_the_file(reports, tmp_path):
    target = tmp_path / "reports" / "run.jsonl"
    text = emit(reports, "jsonlines", target)
    assert target.read_text(encoding="utf-8") == text


def test_table_lists_verdicts_and_failures(reports):
    text = emit(reports, "table")
    lines = text.splitlines()
    assert lines[0].split() == ["id", "kind", "prime", "mode", "verdict", "checks", "detail"]
    assert "cartier-A1" in lines[1] and "PASS" in lines[1] and "2/2" in lines[1]
    assert "failed: twisted_equals_wedge" in lines[2]
    assert "non_smooth: V(x0^2) is singular" in lines[3]
    assert lines[-1] == "ERROR: 1, FAIL: 1, PASS: 1"


def test_table_of_nothing():
    assert emit([], "table") == "no experiments\n"
    assert emit([], "jsonlines") == ""


def test_unknown_format():
    with pytest.raises(ValueError, match="No emitter for format 'csv'"):
        get_emitter("csv")
