import pytest
from charp_core.exceptions import NonFlatError, StructuralError

from charp_sdk.algebra import PolyMatrix, PolynomialRing, random_polynomial
from charp_sdk.weyl import Connection, VectorField, p_curvature, p_curvature_apply
from charp_sdk.weyl.identities import random_vector_field


def test_trivial_connection_has_no_p_curvature(ring3, rng):
    conn = Connection.trivial(ring3, rank=2)
    assert p_curvature(conn, random_vector_field(ring3, rng)).is_zero()


def test_superpotential_line_bundle_on_the_line():
    ring = PolynomialRing.x_ring(1, 3)
    conn = Connection.for_superpotential(ring.parse("x0^2"))
    assert p_curvature(conn, VectorField.coordinate(ring, 0)) == PolyMatrix.from_text(ring, [["x0^3"]])


def test_zero_superpotential_is_trivial(ring5):
    conn = Connection.for_superpotential(ring5.zero())
    assert p_curvature(conn, VectorField.coordinate(ring5, 1)).is_zero()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_superpotential_p_curvature_is_minus_pth_power(p, rng):
    ring = PolynomialRing.x_ring(2, p)
    f = random_polynomial(ring, 3, rng)
    conn = Connection.for_superpotential(f)
    for i in range(2):
        expected = -(f.partial_derivative(i) ** p)
        assert p_curvature(conn, VectorField.coordinate(ring, i)) == PolyMatrix(ring, [[expected]])


def test_p_curvature_is_linear_over_functions(rng):
    ring = PolynomialRing.x_ring(2, 3)
    conn = Connection.for_superpotential(ring.parse("x0*x1 + x1^3"))
    theta = random_vector_field(ring, rng)
    matrix = p_curvature(conn, theta)
    g = random_polynomial(ring, 2, rng)
    assert p_curvature_apply(conn, theta, (g,)) == matrix.apply((g,))


def test_non_flat_connection_is_rejected(ring3):
    a0 = PolyMatrix.from_text(ring3, [["x1"]])
    with pytest.raises(NonFlatError, match="not flat"):
        Connection(ring3, 1, (a0, PolyMatrix.zero(ring3, 1, 1)))


def test_connection_needs_one_matrix_per_variable(ring3):
    with pytest.raises(StructuralError, match="needs 2 matrices"):
        Connection(ring3, 1, (PolyMatrix.zero(ring3, 1, 1),))


def test_vector_field_on_another_ring_is_rejected(ring3, ring5):
    conn = Connection.trivial(ring3)
    with pytest.raises(StructuralError):
        conn.along(VectorField.coordinate(ring5, 0), (ring3.one(),))
