import json

import pytest

from charp_sdk.cli import CACHE_DIR_ENV, _parser, main

GOOD_PLAN = "prime: 3\nexperiments:\n  - {id: line, kind: cartier, n: 1}\n  - {id: square, kind: L_support, n: 1, f: x0^2}\n"
FAILING_PLAN = "prime: 3\nexperiments:\n  - {id: singular, kind: cartier, n: 1, g: x0^2}\n"


@pytest.fixture(autouse=True)
def no_env_cache(monkeypatch):
    monkeypatch.delenv(CACHE_DIR_ENV, raising=False)


def write_plan(tmp_path, text, name="plan.yaml"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_run_writes_jsonlines(tmp_path):
    out = tmp_path / "run.jsonl"
    assert main(["run", write_plan(tmp_path, GOOD_PLAN), "--out", str(out)]) == 0
    records = [json.loads(line) for line in out.read_text(encoding="utf-8").splitlines()]
    assert [(r["id"], r["verdict"]) for r in records] == [("line", "pass"), ("square", "pass")]


def test_run_prints_a_table(tmp_path, capsys):
    assert main(["run", write_plan(tmp_path, GOOD_PLAN), "--format", "table"]) == 0
    out = capsys.readouterr().out
    assert "line" in out and "PASS: 2" in out


def test_empty_plan_prints_no_experiments(tmp_path, capsys):
    assert main(["run", write_plan(tmp_path, "prime: 2\nformat: table\n")]) == 0
    assert capsys.readouterr().out == "no experiments\n"


def test_assert_failure_exits_one(tmp_path):
    out = tmp_path / "run.jsonl"
    assert main(["run", write_plan(tmp_path, FAILING_PLAN), "--out", str(out)]) == 1
    [record] = [json.loads(line) for line in out.read_text(encoding="utf-8").splitlines()]
    assert record["error"]["kind"] == "non_smooth"


def test_exploratory_errors_do_not_fail_the_run(tmp_path):
    plan = FAILING_PLAN.replace("g: x0^2}", "g: x0^2, mode: exploratory}")
    assert main(["run", write_plan(tmp_path, plan), "--out", str(tmp_path / "r.jsonl")]) == 0


@pytest.mark.parametrize(
    "plan,message",
    [
        ("prime: 3\n  bad: indentation\n", "line 2"),
        ("prime: 4\n", "modulus must be prime"),
        ("prime: 3\nexperiments:\n  - {kind: nope}\n", "experiment #0"),
    ],
)
def test_bad_plans_exit_two(tmp_path, capsys, plan, message):
    assert main(["run", write_plan(tmp_path, plan)]) == 2
    assert message in capsys.readouterr().err


def test_missing_plan_exits_two(tmp_path, capsys):
    assert main(["run", str(tmp_path / "absent.yaml")]) == 2
    assert "Could not read plan" in capsys.readouterr().err


def test_run_needs_a_plan_or_a_suite(capsys):
    assert main(["run"]) == 2
    assert "--suite" in capsys.readouterr().err


def test_jobs_must_be_positive(tmp_path):
    assert main(["run", write_plan(tmp_path, GOOD_PLAN), "--jobs", "0"]) == 2


def test_cache_flag_takes_precedence(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_DIR_ENV, str(tmp_path / "from-env"))
    plan = GOOD_PLAN.replace("prime: 3\n", f"prime: 3\ncache: {tmp_path / 'from-plan'}\n")
    out = tmp_path / "r.jsonl"
    assert main(["run", write_plan(tmp_path, plan), "--cache", str(tmp_path / "from-flag"), "--out", str(out)]) == 0
    assert (tmp_path / "from-flag" / "charp-cache.sqlite").exists()
    assert not (tmp_path / "from-plan").exists()
    assert not (tmp_path / "from-env").exists()


def test_environment_cache_is_the_fallback(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_DIR_ENV, str(tmp_path / "from-env"))
    assert main(["run", write_plan(tmp_path, GOOD_PLAN), "--out", str(tmp_path / "r.jsonl")]) == 0
    assert (tmp_path / "from-env" / "charp-cache.sqlite").exists()
    record = json.loads((tmp_path / "r.jsonl").read_text(encoding="utf-8").splitlines()[0])
    assert set(record["timings"]["cache"]) == {"hits", "misses"}


def test_replays_compare_equal(tmp_path, capsys):
    plan = write_plan(tmp_path, GOOD_PLAN)
    first, second = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert main(["run", plan, "--out", str(first)]) == 0
    assert main(["run", plan, "--out", str(second), "--cache", str(tmp_path / "cache")]) == 0
    assert main(["compare", str(first), str(second)]) == 0
    assert "equivalent" in capsys.readouterr().out


def test_compare_reports_differences(tmp_path, capsys):
    first, second = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    first.write_text('{"id": "x", "verdict": "pass"}\n', encoding="utf-8")
    second.write_text('{"id": "x", "verdict": "fail"}\n', encoding="utf-8")
    assert main(["compare", str(first), str(second), "--details"]) == 1
    out = capsys.readouterr().out
    assert "Changed at" in out
    assert "values_changed" in out


def test_compare_missing_file_exits_two(tmp_path, capsys):
    present = tmp_path / "a.jsonl"
    present.write_text("", encoding="utf-8")
    assert main(["compare", str(present), str(tmp_path / "b.jsonl")]) == 2
    assert "lab compare" in capsys.readouterr().err


def test_paper_suite_passes_and_replays(tmp_path, capsys):
    first, second = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    cache = str(tmp_path / "cache")
    assert main(["run", "--suite", "paper", "--jobs", "2", "--cache", cache, "--out", str(first)]) == 0
    records = {r["id"]: r for r in map(json.loads, first.read_text(encoding="utf-8").splitlines())}
    assert {r["verdict"] for r in records.values()} == {"pass"}
    assert records["quartic-p7"]["tables"]["derham"]["dimensions"] == [1, 6, 1]
    assert main(["run", "--suite", "paper", "--jobs", "2", "--cache", cache, "--out", str(second)]) == 0
    assert main(["compare", str(first), str(second)]) == 0


@pytest.mark.parametrize("name", ["paper", "acceptance"])
def test_suite_names_are_accepted(name):
    assert _parser().parse_args(["run", "--suite", name]).suite == name


def test_unknown_suite_is_rejected(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["run", "--suite", "nightly"])
    assert excinfo.value.code == 2


def test_non_utf8_plan_exits_two(tmp_path, capsys):
    path = tmp_path / "plan.yaml"
    path.write_bytes(b"prime: 3\n# caf\xe9\n")
    assert main(["run", str(path)]) == 2
    assert "not valid UTF-8" in capsys.readouterr().err
