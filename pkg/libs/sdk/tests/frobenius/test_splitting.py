import pytest
from charp_core.exceptions import StructuralError

from charp_sdk.algebra import PolynomialRing
from charp_sdk.frobenius import generated_algebra_dimension, splitting_module
from charp_sdk.linalg import FpMatrix


@pytest.mark.parametrize("n,p", [(1, 2), (1, 3), (2, 2), (1, 5)])
def test_untwisted_splitting_module(n, p):
    module = splitting_module(n, p)
    assert all(module.checks.values()), module.checks
    assert module.rank == p**n
    assert module.fibre_dimension == p ** (2 * n)


def test_twisted_splitting_module():
    ring = PolynomialRing.x_ring(1, 3)
    module = splitting_module(1, 3, ring.parse("x0^2"))
    assert all(module.checks.values()), module.checks
    assert module.outcome().tables == {"rank": 3, "fibre_dimension": 9, "expected_fibre_dimension": 9}


def test_multiplication_by_x_on_the_basis():
    module = splitting_module(1, 2)
    assert module.multiplications[0].to_text() == [["0", "y0"], ["1", "0"]]


def test_rank_is_bounded():
    with pytest.raises(StructuralError, match="exceeds 27"):
        splitting_module(2, 7)


def test_generated_algebra_dimension():
    assert generated_algebra_dimension([FpMatrix.identity(3, 5)]) == 1
    shift = FpMatrix([[0, 1], [0, 0]], 5)
    assert generated_algebra_dimension([shift]) == 2
    assert generated_algebra_dimension([shift, shift.transpose()]) == 4
