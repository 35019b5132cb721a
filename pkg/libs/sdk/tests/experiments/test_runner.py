import pytest
from charp_core.types import ExperimentSpec, Mode, Verdict

from charp_sdk.experiments import parse_plan, run_experiment, run_plan, run_plans, summarize

ISOLATION_PLAN = """
prime: 3
experiments:
  - {id: singular, kind: cartier, n: 1, g: "x0^2"}
  - {id: product, kind: L_support, n: 2, f: "x0*x1"}
  - {id: line, kind: cartier, n: 1, mode: exploratory}
"""


@pytest.fixture
def plan():
    return parse_plan(ISOLATION_PLAN)


def test_failing_experiment_does_not_affect_siblings(plan):
    reports = run_plan(plan)
    assert [r.id for r in reports] == ["singular", "product", "line"]
    assert [r.verdict for r in reports] == [Verdict.ERROR, Verdict.PASS, Verdict.EXPLORATORY]
    assert reports[0].error.kind == "non_smooth"
    assert "singular" in reports[0].error.message
    assert reports[1].error is None


def test_summary_counts_assert_failures(plan):
    summary = summarize(run_plan(plan))
    assert summary["total"] == 3
    assert summary["verdicts"] == {"pass": 1, "fail": 0, "exploratory": 1, "error": 1}
    assert summary["assert_failures"] == 1


def test_empty_plan_runs_nothing():
    reports = run_plan(parse_plan("prime: 5\n"))
    assert reports == []
    assert summarize(reports)["total"] == 0


def test_timings_without_a_cache():
    spec = ExperimentSpec(id="a1", kind="cartier", params={"n": 1})
    report = run_experiment(spec, 2)
    assert report.verdict is Verdict.PASS
    assert report.timings["cache"] is None
    assert report.timings["seconds"] >= 0


def test_cache_session_records_counters(tmp_path):
    spec = ExperimentSpec(id="a1", kind="cartier", params={"n": 1})
    first = run_experiment(spec, 3, tmp_path / "cache")
    second = run_experiment(spec, 3, tmp_path / "cache")
    assert (tmp_path / "cache" / "charp-cache.sqlite").exists()
    assert set(first.timings["cache"]) == {"hits", "misses"}
    assert second.timings["cache"]["hits"] >= 1
    assert first.tables == second.tables


def test_unexpected_errors_become_reports():
    spec = ExperimentSpec(id="broken", kind="cartier", params={}, mode=Mode.ASSERT)
    report = run_experiment(spec, 3)
    assert report.verdict is Verdict.ERROR
    assert report.error.kind == "unexpected"
    assert report.error.message.startswith("KeyError")


def test_process_pool_keeps_plan_order():
    text = "prime: 2\njobs: 2\nexperiments:\n" + "".join(
        f"  - {{id: e{i}, kind: L_support, n: 1, f: \"x0^{i + 1}\"}}\n" for i in range(4)
    )
    reports = run_plan(parse_plan(text))
    assert [r.id for r in reports] == ["e0", "e1", "e2", "e3"]
    assert all(r.verdict is Verdict.PASS for r in reports)


def test_run_plans_concatenates_in_order():
    a = parse_plan("prime: 2\nexperiments:\n  - {id: a, kind: L_support, n: 1, f: x0}\n")
    b = parse_plan("prime: 3\nexperiments:\n  - {id: b, kind: L_support, n: 1, f: x0}\n")
    reports = run_plans([a, b])
    assert [(r.id, r.prime) for r in reports] == [("a", 2), ("b", 3)]
