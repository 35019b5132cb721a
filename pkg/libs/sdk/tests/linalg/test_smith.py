import pytest
from charp_core.exceptions import StructuralError
from charp_core.types import Finite, InfiniteOrAbove

from charp_sdk.algebra import PolyMatrix, PolynomialRing, random_polynomial
from charp_sdk.linalg import smith_normal_form


@pytest.fixture
def y_ring():
    return PolynomialRing.y_ring(1, 5)


def test_already_diagonal(y_ring):
    m = PolyMatrix.from_text(y_ring, [["1", "0"], ["0", "y0"]])
    smith = smith_normal_form(m)
    assert smith.verify()
    assert smith.D == m
    assert smith.cokernel_dimension() == Finite(1)


def test_zero_matrix_has_infinite_cokernel(y_ring):
    smith = smith_normal_form(PolyMatrix.zero(y_ring, 2, 2))
    assert smith.D.is_zero()
    assert isinstance(smith.cokernel_dimension(), InfiniteOrAbove)
    assert smith.cokernel_free_rank() == 2
    assert smith.kernel_rank() == 2


def test_divisibility_chain(y_ring):
    m = PolyMatrix.from_text(y_ring, [["y0", "0"], ["0", "y0 + 1"]])
    smith = smith_normal_form(m)
    assert smith.verify()
    assert [str(d) for d in smith.invariant_factors] == ["1", "y0^2 + y0"]


def test_multivariate_input_is_rejected():
    ring = PolynomialRing.y_ring(2, 3)
    with pytest.raises(StructuralError):
        smith_normal_form(PolyMatrix.identity(ring, 2))


def test_degree_of_determinant_oracle(y_ring, rng):
    checked = 0
    for _ in range(30):
        size = rng.randint(1, 3)
        m = PolyMatrix(y_ring, [[random_polynomial(y_ring, 2, rng) for _ in range(size)] for _ in range(size)])
        det = m.determinant()
        smith = smith_normal_form(m)
        assert smith.verify()
        assert smith.U.determinant().is_constant() and not smith.U.determinant().is_zero()
        assert smith.V.determinant().is_constant() and not smith.V.determinant().is_zero()
        if det.is_zero():
            continue
        checked += 1
        assert smith.cokernel_dimension() == Finite(det.degree())
    assert checked > 0
