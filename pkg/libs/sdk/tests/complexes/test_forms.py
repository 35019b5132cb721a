import pytest

from charp_sdk.algebra import PolynomialRing, random_polynomial
from charp_sdk.complexes import add_forms, contract, exterior_derivative, scale_form, wedge_one_form


@pytest.fixture
def r3():
    return PolynomialRing.x_ring(3, 5)


def test_derivative_of_a_function(r3):
    f = r3.parse("x0^2*x1 + x2")
    df = exterior_derivative(r3, {(): f})
    assert df == {(0,): r3.parse("2*x0*x1"), (1,): r3.parse("x0^2"), (2,): r3.one()}


def test_derivative_of_a_one_form(r3):
    # d(x0 dx1) = dx0 ^ dx1
    assert exterior_derivative(r3, {(1,): r3.parse("x0")}) == {(0, 1): r3.one()}
    # d(x1 dx0) = -dx0 ^ dx1
    assert exterior_derivative(r3, {(0,): r3.parse("x1")}) == {(0, 1): r3.parse("-1")}


def test_d_squared_vanishes(r3, rng):
    for _ in range(5):
        form = {S: random_polynomial(r3, 3, rng, 0.3) for S in [(), (0,), (1, 2)]}
        assert exterior_derivative(r3, exterior_derivative(r3, form)) == {}


def test_wedge_is_alternating(r3, rng):
    omega = [random_polynomial(r3, 2, rng) for _ in range(3)]
    once = wedge_one_form(r3, omega, {(): r3.one()})
    assert wedge_one_form(r3, omega, once) == {}


def test_contraction_is_a_derivation_on_dx(r3):
    field = [r3.one(), r3.zero(), r3.parse("x0")]
    # contraction of dx0 ^ dx2 with d/dx0 + x0 d/dx2 is dx2 - x0 dx0
    assert contract(r3, field, {(0, 2): r3.one()}) == {(2,): r3.one(), (0,): r3.parse("-x0")}


def test_cartan_formula_on_functions(r3, rng):
    f = random_polynomial(r3, 3, rng)
    field = [random_polynomial(r3, 1, rng) for _ in range(3)]
    lie = sum((v * f.partial_derivative(i) for i, v in enumerate(field)), r3.zero())
    assert contract(r3, field, exterior_derivative(r3, {(): f})) == ({(): lie} if not lie.is_zero() else {})


def test_scale_and_add_drop_zero_coefficients(r3):
    form = {(0,): r3.parse("x1"), (1,): r3.parse("x0")}
    assert scale_form(form, r3.zero()) == {}
    assert add_forms(r3, form, scale_form(form, r3.parse("-1"))) == {}
    assert add_forms(r3, form, {(2,): r3.one()}) == {**form, (2,): r3.one()}
