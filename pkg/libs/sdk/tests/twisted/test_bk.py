import pytest
from charp_core.exceptions import StructuralError
from charp_core.types import ComparisonVerdict, Finite, InfiniteOrAbove, Mode, Verdict

from charp_sdk.algebra import PolyMatrix
from charp_sdk.frobenius import FrobeniusStructure, build_derham_pushforward
from charp_sdk.frobenius.varieties import AffineVariety
from charp_sdk.groebner import ModuleSignature
from charp_sdk.twisted import (
    Superpotential,
    bk_report,
    build_twisted_pushforward,
    build_wedge_complex,
    compare_twisted_complexes,
    critical_locus,
    predicted_profile,
)


def test_zero_superpotential_gives_the_de_rham_pushforward():
    twisted = build_twisted_pushforward(Superpotential.parse("0", 2, 3))
    plain = build_derham_pushforward(AffineVariety.affine_space(2, 3))
    assert twisted.ranks == plain.ranks
    assert all(twisted.differential(i) == plain.differential(i) for i in range(2))


def test_twisted_differential_of_a_double_point():
    twisted = build_twisted_pushforward(Superpotential.parse("x0^2", 1, 3))
    ring = twisted.ring
    assert twisted.differential(0) == PolyMatrix.from_text(
        ring, [["0", "1", "-2*y0"], ["-2", "0", "2"], ["0", "-2", "0"]]
    )


def test_structure_must_match_the_superpotential():
    with pytest.raises(StructuralError, match="Frobenius structure"):
        build_twisted_pushforward(Superpotential.parse("x0^2", 1, 3), FrobeniusStructure(2, 3))


def test_wedge_complex_is_koszul_on_the_twisted_partials():
    wedge = build_wedge_complex(Superpotential.parse("x0^2 + x1^3", 2, 5))
    assert wedge.ranks == (1, 2, 1)
    assert wedge.differential(0) == PolyMatrix.from_text(wedge.ring, [["2*y0"], ["3*y1^2"]])


@pytest.mark.parametrize(
    "text,n,p",
    [
        ("x0^2", 1, 3),
        ("x0^2", 1, 5),
        ("x0^2 + x1^2", 2, 3),
    ],
)
def test_quadratic_superpotentials_concentrate_in_top_degree(text, n, p):
    comparison = compare_twisted_complexes(Superpotential.parse(text, n, p))
    expected = [0] * n + [1]
    assert comparison.twisted.finite_values() == expected
    assert comparison.wedge.finite_values() == expected
    assert comparison.predicted is not None
    assert comparison.predicted.finite_values() == expected
    assert set(comparison.verdicts.values()) == {ComparisonVerdict.EQUAL.value}
    assert all(comparison.checks.values())


def test_line_of_critical_points_has_infinite_but_matching_profiles():
    f = Superpotential.parse("x1^2", 2, 3)
    comparison = compare_twisted_complexes(f)
    assert comparison.twisted.finite_values() is None
    assert comparison.verdicts["twisted_vs_wedge"] == ComparisonVerdict.EQUAL.value
    assert comparison.checks["twisted_equals_wedge"]
    assert "euler_characteristics_agree" not in comparison.checks
    assert any("not proper" in note for note in comparison.notes)


def test_predicted_profile_of_a_line():
    f = Superpotential.parse("x1^2", 2, 3)
    predicted = predicted_profile(f, critical_locus(f), degree_cap=10)
    assert predicted is not None
    assert predicted[0].dimension == Finite(0)
    for degree in (1, 2):
        assert predicted[degree].dimension == InfiniteOrAbove(cap=10)
        assert predicted[degree].signature == ModuleSignature(1, 1)


def test_empty_critical_locus_predicts_zero():
    comparison = compare_twisted_complexes(Superpotential.parse("x0", 1, 3))
    assert comparison.analysis.empty
    assert comparison.twisted.finite_values() == [0, 0]
    assert comparison.predicted.finite_values() == [0, 0]
    assert all(comparison.checks.values())


def test_failed_hypotheses_only_compare_euler_characteristics():
    comparison = compare_twisted_complexes(Superpotential.parse("x0^3", 1, 5))
    assert comparison.predicted is None
    assert comparison.checks == {"euler_characteristics_agree": True}
    assert comparison.wedge.finite_values() == [0, 2]
    assert "twisted_vs_wedge" in comparison.verdicts
    assert "twisted_vs_predicted" not in comparison.verdicts
    assert any("recorded, not asserted" in note for note in comparison.notes)


def test_bk_report_passes_for_a_double_point():
    report = bk_report(Superpotential.parse("x0^2", 1, 3))
    assert report.verdict is Verdict.PASS
    assert report.kind == "bk"
    assert report.prime == 3
    assert report.parameters == {"n": 1, "f": "x0^2"}
    assert report.tables["euler"] == {"twisted": -1, "wedge": -1}
    assert report.tables["critical_locus"]["dimension"] == 0


def test_exploratory_report_never_fails():
    report = bk_report(Superpotential.parse("x0^3", 1, 5), mode=Mode.EXPLORATORY)
    assert report.verdict is Verdict.EXPLORATORY
    assert not report.is_assert_failure


def test_report_records_a_non_default_retraction_degree():
    report = bk_report(Superpotential.parse("x0^2", 1, 3), retraction_degree=4)
    assert report.verdict is Verdict.PASS
    assert report.parameters == {"n": 1, "f": "x0^2", "retraction_degree": 4}
