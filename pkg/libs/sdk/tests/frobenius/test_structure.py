import pytest
from charp_core.exceptions import NonSmoothError, StructuralError

from charp_sdk.algebra import PolynomialRing, random_polynomial
from charp_sdk.frobenius import AffineVariety, FrobeniusStructure, frobenius_pushforward


def test_basis_is_lexicographic():
    fs = FrobeniusStructure(2, 2)
    assert fs.basis == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert fs.size == 4
    assert fs.form_rank(1) == 8


@pytest.mark.parametrize(
    "n,p,text,expected",
    [
        (1, 3, "x0^4", ["0", "y0", "0"]),
        (1, 3, "1", ["1", "0", "0"]),
        (2, 2, "x0^3*x1", ["0", "0", "0", "y0"]),
        (1, 5, "x0^7 + 2*x0^5 + 3", ["3 + 2*y0", "0", "y0", "0", "0"]),
    ],
)
def test_pushforward_components(n, p, text, expected):
    fs = FrobeniusStructure(n, p)
    components = frobenius_pushforward(fs.x_ring.parse(text), fs)
    assert components == [fs.y_ring.parse(e) for e in expected]


@pytest.mark.parametrize("n,p", [(1, 2), (1, 5), (2, 3), (3, 2)])
def test_reconstruction_is_exact(n, p, rng):
    fs = FrobeniusStructure(n, p)
    for _ in range(5):
        f = random_polynomial(fs.x_ring, 2 * p + 1, rng, 0.3)
        assert fs.reconstruct(fs.pushforward(f)) == f


def test_form_round_trip(rng):
    fs = FrobeniusStructure(2, 3)
    form = {(0,): random_polynomial(fs.x_ring, 4, rng), (1,): random_polynomial(fs.x_ring, 4, rng)}
    form = {S: g for S, g in form.items() if not g.is_zero()}
    assert fs.reconstruct_form(1, fs.pushforward_form(1, form)) == form


def test_pushforward_rejects_other_rings():
    fs = FrobeniusStructure(1, 3)
    with pytest.raises(StructuralError):
        fs.pushforward(PolynomialRing.y_ring(1, 3).parse("y0"))


def test_structure_needs_a_variable():
    with pytest.raises(StructuralError, match="at least one variable"):
        FrobeniusStructure(0, 3)


def test_smooth_hypersurface_carries_a_certificate():
    ring = PolynomialRing.x_ring(2, 3)
    variety = AffineVariety.hypersurface(ring.parse("x0*x1 - 1"))
    assert variety.certificate is not None and variety.certificate.is_whole_module()
    assert variety.dimension == 1
    assert variety.twisted_equations() == [variety.y_ring.parse("y0*y1 - 1")]
    assert variety.describe() == "V(x0*x1 + 2) in A^2 over F_3"


def test_singular_hypersurface_is_rejected():
    ring = PolynomialRing.x_ring(2, 3)
    with pytest.raises(NonSmoothError, match="singular"):
        AffineVariety.hypersurface(ring.parse("x0^2 + x1^2"))


def test_constant_equation_is_rejected():
    with pytest.raises(StructuralError, match="non-constant"):
        AffineVariety.hypersurface(PolynomialRing.x_ring(1, 3).parse("2"))


def test_prime_bound():
    assert AffineVariety.affine_space(1, 2).satisfies_prime_bound
    assert not AffineVariety.affine_space(2, 2).satisfies_prime_bound
    assert AffineVariety.affine_space(2, 3).satisfies_prime_bound
