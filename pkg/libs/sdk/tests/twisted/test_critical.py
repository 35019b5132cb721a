import pytest
from charp_core.exceptions import StructuralError

from charp_sdk.algebra import PolyMatrix, PolynomialRing
from charp_sdk.groebner import FreeModuleVector, module_groebner
from charp_sdk.twisted import Superpotential, critical_locus, find_retraction, tangent_generators


def test_isolated_quadratic_point():
    analysis = critical_locus(Superpotential.parse("x0^2 + x1^2", 2, 3))
    assert not analysis.empty
    assert (analysis.dimension, analysis.codimension) == (0, 2)
    assert analysis.smooth
    assert analysis.split is True
    assert analysis.hypotheses_hold


def test_line_of_critical_points_is_smooth_and_split():
    analysis = critical_locus(Superpotential.parse("x1^2", 2, 3))
    assert (analysis.dimension, analysis.codimension) == (1, 1)
    assert analysis.smooth
    assert analysis.split is True
    assert analysis.retraction is not None


def test_empty_critical_locus():
    analysis = critical_locus(Superpotential.parse("x0 + x1^2", 2, 5))
    assert analysis.empty
    assert analysis.dimension == -1
    assert analysis.codimension is None
    assert analysis.hypotheses_hold
    assert "empty" in analysis.notes[0]


def test_fat_point_is_not_smooth():
    analysis = critical_locus(Superpotential.parse("x0^3", 1, 5))
    assert analysis.dimension == 0
    assert not analysis.smooth
    assert analysis.split is None
    assert not analysis.hypotheses_hold
    assert any("not scheme-theoretically smooth" in note for note in analysis.notes)


def test_record_lists_the_jacobian():
    record = critical_locus(Superpotential.parse("x0*x1", 2, 3)).to_record()
    assert record["jacobian"] == ["x1", "x0"]
    assert record["dimension"] == 0
    assert record["smooth"] is True


def test_tangent_generators_of_a_line():
    ring = PolynomialRing.x_ring(2, 3)
    hessian = PolyMatrix.from_text(ring, [["0", "0"], ["0", "2"]])
    tangents = tangent_generators(hessian, [ring.parse("x1")])
    gb = module_groebner([FreeModuleVector(ring, list(v)) for v in tangents], ring=ring, rank=2)
    assert gb.contains(FreeModuleVector(ring, [ring.one(), ring.zero()]))
    for v in tangents:
        # the second component lies in J = (x1)
        assert all(mono[1] >= 1 for mono in v[1].monomials())


def test_retraction_restricts_to_the_identity():
    ring = PolynomialRing.x_ring(2, 3)
    hessian = PolyMatrix.from_text(ring, [["0", "0"], ["0", "2"]])
    gb = module_groebner([FreeModuleVector(ring, [ring.parse("x1")])], ring=ring, rank=1)
    retraction = find_retraction(hessian, gb)
    assert retraction is not None
    assert retraction == PolyMatrix.from_text(ring, [["1", "0"], ["0", "0"]])


@pytest.mark.parametrize("p", [3, 5])
def test_superpotential_twist(p):
    f = Superpotential.parse("x0^2*x1 + 1", 2, p)
    assert str(f.twisted) == "y0^2*y1 + 1"
    assert [str(g) for g in f.twisted_partials] == ["2*y0*y1", "y0^2"]


def test_constant_retraction_is_found_at_degree_zero():
    analysis = critical_locus(Superpotential.parse("x1^2", 2, 3), retraction_degree=0)
    assert analysis.split is True


@pytest.mark.parametrize("degree", [-1, 7])
def test_retraction_degree_is_bounded(degree):
    with pytest.raises(StructuralError, match="retraction degree must be in 0..6"):
        critical_locus(Superpotential.parse("x1^2", 2, 3), retraction_degree=degree)
