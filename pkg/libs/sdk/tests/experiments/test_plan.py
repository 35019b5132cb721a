import pytest
from charp_core.exceptions import PlanSyntaxError, PlanValidationError
from charp_core.types import Mode

from charp_sdk.experiments import SUITES, acceptance_suite, known_kinds, load_plan, parse_plan, plan_from_mapping


def one(kind_line):
    return f"prime: 3\nexperiments:\n  - {kind_line}\n"


def test_minimal_plan():
    plan = parse_plan("prime: 3\nexperiments: []\n")
    assert plan.prime == 3
    assert plan.experiments == []
    assert (plan.jobs, plan.format, plan.output, plan.cache) == (1, "jsonlines", None, None)


def test_bk_experiment():
    plan = parse_plan(one('{kind: bk, f: "x0^2", n: 1, mode: assert}'))
    [spec] = plan.experiments
    assert spec.kind == "bk"
    assert spec.id == "bk-0"
    assert spec.params == {"n": 1, "f": "x0^2"}
    assert spec.mode is Mode.ASSERT
    assert spec.degree_cap == 40


def test_bk_accepts_a_retraction_degree():
    plan = parse_plan(one("{kind: bk, f: x0^2, n: 1, retraction_degree: 4}"))
    assert plan.experiments[0].params == {"n": 1, "f": "x0^2", "retraction_degree": 4}


def test_block_style_and_settings():
    text = """
prime: 5
jobs: 2
format: table
output: out/run.txt
cache: .cache
experiments:
  - id: quartic
    kind: projective_degeneration
    mode: exploratory
    projective:
      G: "x0^3 + x1^3 + x2^3"
      window: 2
"""
    plan = parse_plan(text)
    assert (plan.jobs, plan.format, plan.output, plan.cache) == (2, "table", "out/run.txt", ".cache")
    [spec] = plan.experiments
    assert spec.id == "quartic"
    assert spec.mode is Mode.EXPLORATORY
    assert spec.params == {"projective": {"G": "x0^3 + x1^3 + x2^3", "truncation": None, "window": 2}}


def test_polynomials_are_normalized():
    plan = plan_from_mapping({"prime": 3, "experiments": [{"kind": "L_support", "n": 1, "f": "x0*x0 + 4"}]})
    assert plan.experiments[0].params["f"] == "x0^2 + 1"


@pytest.mark.parametrize("prime", ["4", "1", '"3"', "true", "101"])
def test_prime_must_be_a_supported_prime(prime):
    with pytest.raises(PlanValidationError, match="modulus"):
        parse_plan(f"prime: {prime}\n")


def test_syntax_error_carries_position():
    with pytest.raises(PlanSyntaxError) as excinfo:
        parse_plan("prime: 3\n  bad: indentation\n")
    assert excinfo.value.line == 2
    assert excinfo.value.column is not None
    assert "line 2" in str(excinfo.value)


def test_plan_must_be_a_mapping():
    with pytest.raises(PlanSyntaxError, match="must be a mapping"):
        parse_plan("- 1\n- 2\n")


@pytest.mark.parametrize(
    "line,match",
    [
        ("{kind: frobnicate, n: 1}", "unknown experiment kind"),
        ("{n: 1}", "missing 'kind'"),
        ("{kind: cartier, n: 4}", "at most 3"),
        ("{kind: cartier}", "missing required key 'n'"),
        ("{kind: cartier, n: 1, g: 2}", "non-constant"),
        ("{kind: cartier, n: 1, colour: red}", "unknown keys"),
        ("{kind: weyl_identities, n: 3}", "at most 2"),
        ("{kind: L_support, n: 1}", "missing required key 'f'"),
        ('{kind: bk, n: 1, f: "x0 +"}', "'f'"),
        ("{kind: projective_degeneration, projective: {space: 1, G: x0}}", "exactly one"),
        ("{kind: projective_degeneration, projective: {space: 3}}", "at most 2"),
        ('{kind: projective_degeneration, projective: {G: "x0^2 + x1"}}', "homogeneous"),
        ("{kind: cartier, n: 1, mode: maybe}", "maybe"),
        ("{kind: cartier, n: 1, degree_cap: 0}", "degree_cap"),
        ("{kind: bk, n: 1, f: x0^2, retraction_degree: 7}", "at most 6"),
        ("{kind: bk, n: 1, f: x0^2, retraction_degree: -1}", "at least 0"),
        ("{kind: L_support, n: 1, f: x0^2, retraction_degree: 3}", "unknown keys"),
    ],
)
def test_invalid_experiments_name_their_index(line, match):
    with pytest.raises(PlanValidationError, match=match) as excinfo:
        parse_plan(one(line))
    assert excinfo.value.experiment_index == 0


def test_duplicate_ids_are_rejected():
    text = "prime: 2\nexperiments:\n  - {id: a, kind: cartier, n: 1}\n  - {id: a, kind: obstruction, n: 1}\n"
    with pytest.raises(PlanValidationError, match="duplicate id 'a'") as excinfo:
        parse_plan(text)
    assert excinfo.value.experiment_index == 1


@pytest.mark.parametrize(
    "text,match",
    [
        ("prime: 3\nseed: 1\n", "unknown plan keys"),
        ("experiments: []\n", "missing 'prime'"),
        ("prime: 3\nformat: csv\n", "'format'"),
        ("prime: 3\njobs: 0\n", "'jobs'"),
        ("prime: 3\nexperiments: {kind: cartier}\n", "must be a list"),
    ],
)
def test_invalid_plan_settings(text, match):
    with pytest.raises(PlanValidationError, match=match):
        parse_plan(text)


def test_load_plan_names_a_missing_file(tmp_path):
    with pytest.raises(OSError, match="Could not read plan"):
        load_plan(tmp_path / "missing.yaml")


def test_load_plan_rejects_non_utf8_bytes(tmp_path):
    path = tmp_path / "plan.yaml"
    path.write_bytes(b"prime: 3\n# \xff\xfe\n")
    with pytest.raises(PlanSyntaxError, match="not valid UTF-8"):
        load_plan(path)


def test_load_plan_reads_utf8(tmp_path):
    path = tmp_path / "plan.yaml"
    path.write_text("# Plan für A¹\nprime: 2\nexperiments:\n  - {kind: cartier, n: 1}\n", encoding="utf-8")
    assert load_plan(path).experiments[0].kind == "cartier"


def test_acceptance_suite_is_one_plan_per_prime():
    plans = acceptance_suite()
    assert [plan.prime for plan in plans] == [2, 3, 5, 7]
    ids = [spec.id for plan in plans for spec in plan.experiments]
    assert len(ids) == len(set(ids))
    assert {spec.kind for plan in plans for spec in plan.experiments} == set(known_kinds())
    assert SUITES["paper"] is SUITES["acceptance"] is acceptance_suite


def test_splitting_rank_is_bounded_by_the_prime():
    with pytest.raises(PlanValidationError, match="exceeds 27"):
        parse_plan("prime: 7\nexperiments:\n  - {kind: splitting, n: 2}\n")
    assert parse_plan("prime: 3\nexperiments:\n  - {kind: splitting, n: 3}\n").experiments[0].params == {"n": 3}
