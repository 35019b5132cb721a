import pytest
from charp_core.exceptions import NonSmoothError, StructuralError

from charp_sdk.algebra import PolynomialRing
from charp_sdk.projective import ProjectiveVariety, dehomogenize, section_space


def test_projective_line():
    line = ProjectiveVariety.projective_space(1, 3)
    assert (line.ambient_dimension, line.dimension, line.charts) == (1, 1, 2)
    assert line.degree == 1
    assert line.default_truncation() == 2
    assert line.describe() == "P^1 over F_3"
    assert line.gluing_data()["chart_equations"] == []


def test_projective_space_range():
    with pytest.raises(StructuralError, match="supported range"):
        ProjectiveVariety.projective_space(3, 5)
    with pytest.raises(StructuralError, match="prime"):
        ProjectiveVariety.projective_space(1, 4)


def test_fermat_cubic_has_a_certificate():
    curve = ProjectiveVariety.parse_curve("x0^3 + x1^3 + x2^3", 5)
    assert curve.degree == 3
    assert curve.dimension == 1
    assert curve.default_truncation() == 3
    assert len(curve.certificate) == 3
    assert all(gb == ["[1]"] for gb in curve.certificate)
    assert len(curve.gluing_data()["chart_equations"]) == 3


def test_cusp_is_singular():
    with pytest.raises(NonSmoothError, match="singular"):
        ProjectiveVariety.parse_curve("x0^2*x2 + 4*x1^3", 5)


def test_fermat_cubic_is_singular_in_characteristic_three():
    with pytest.raises(NonSmoothError):
        ProjectiveVariety.parse_curve("x0^3 + x1^3 + x2^3", 3)


@pytest.mark.parametrize("text", ["x0^2 + x1", "0", "1"])
def test_curve_needs_a_homogeneous_form(text):
    with pytest.raises(StructuralError, match="homogeneous form"):
        ProjectiveVariety.parse_curve(text, 5)


def test_curve_needs_three_coordinates():
    with pytest.raises(StructuralError, match="3 homogeneous coordinates"):
        ProjectiveVariety.plane_curve(PolynomialRing.x_ring(2, 5).parse("x0*x1"))


def test_dehomogenize_sets_the_chart_variable_to_one():
    ring = PolynomialRing.x_ring(3, 5)
    g = ring.parse("x0^3 + x1^3 + x2^3")
    assert dehomogenize(g, 0) == ring.parse("1 + x1^3 + x2^3")
    assert dehomogenize(ring.parse("x0*x1 - x0^2"), 0) == ring.parse("x1 - 1")


def test_prime_bound():
    assert not ProjectiveVariety.projective_space(2, 2).satisfies_prime_bound
    assert ProjectiveVariety.projective_space(2, 3).satisfies_prime_bound


@pytest.mark.parametrize("weight", [1, 2, 3, 4])
def test_sections_on_the_projective_line(weight):
    line = ProjectiveVariety.projective_space(1, 5)
    # homogeneous polynomials of degree m, and basic 1-forms of weight m
    assert section_space(line, 0, weight).dimension == weight + 1
    assert section_space(line, 1, weight).dimension == weight - 1


def test_sections_of_a_curve_see_the_relations():
    curve = ProjectiveVariety.parse_curve("x0^3 + x1^3 + x2^3", 5)
    # degree-3 forms modulo the cubic itself
    assert section_space(curve, 0, 3).dimension == 9
