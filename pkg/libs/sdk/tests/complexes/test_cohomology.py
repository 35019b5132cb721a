import pytest
from charp_core.exceptions import StructuralError
from charp_core.types import ComparisonVerdict, Finite, InfiniteOrAbove

from charp_sdk.algebra import PolyMatrix, PolynomialRing, random_polynomial
from charp_sdk.complexes import (
    CohomologyProfile,
    cohomology_profile,
    compare_profiles,
    finite_profile,
    koszul_complex,
    make_complex,
    minimize,
    smith_profile,
)
from charp_sdk.groebner import ModuleSignature


@pytest.fixture
def pushforward_a1():
    """Frobenius pushforward of the de Rham complex of the affine line, p = 3, over k[y0]."""
    ring = PolynomialRing.y_ring(1, 3)
    d = PolyMatrix.from_text(ring, [["0", "1", "0"], ["0", "0", "2"], ["0", "0", "0"]])
    return make_complex([3, 3], [d])


def test_exact_complex_has_no_cohomology():
    ring = PolynomialRing.x_ring(1, 5)
    profile = cohomology_profile(make_complex([1, 1], [PolyMatrix.identity(ring, 1)]))
    assert profile.finite_values() == [0, 0]
    assert profile.euler_characteristic() == 0


def test_koszul_on_a_regular_sequence_lives_in_top_degree():
    ring = PolynomialRing.x_ring(2, 3)
    profile = cohomology_profile(koszul_complex(ring.gens()))
    assert profile.finite_values() == [0, 0, 1]


def test_koszul_on_one_linear_form():
    ring = PolynomialRing.y_ring(1, 3)
    profile = cohomology_profile(koszul_complex([ring.parse("2*y0")]))
    assert profile.finite_values() == [0, 1]


def test_koszul_on_three_variables_with_threads():
    ring = PolynomialRing.x_ring(3, 2)
    profile = cohomology_profile(koszul_complex(ring.gens()), jobs=3)
    assert profile.finite_values() == [0, 0, 0, 1]


def test_cartier_pushforward_is_free(pushforward_a1):
    profile = cohomology_profile(pushforward_a1)
    assert profile.free_ranks() == [1, 1]
    assert all(isinstance(d, InfiniteOrAbove) for d in profile.dimensions())
    assert profile[0].signature == ModuleSignature(1, 1)
    assert profile.summary() == ["free(1)", "free(1)"]
    assert profile.euler_characteristic() is None


def test_smith_oracle_agrees_on_the_pushforward(pushforward_a1):
    ours = cohomology_profile(pushforward_a1)
    oracle = smith_profile(pushforward_a1)
    assert oracle.free_ranks() == [1, 1]
    assert compare_profiles(ours, oracle) is ComparisonVerdict.EQUAL


def test_smith_oracle_agrees_on_random_univariate_complexes(rng):
    for _ in range(50):
        ring = PolynomialRing.y_ring(1, rng.choice([2, 3, 5, 7]))
        n0, n1 = rng.randint(1, 3), rng.randint(1, 3)
        d = PolyMatrix(ring, [[random_polynomial(ring, 3, rng) for _ in range(n0)] for _ in range(n1)])
        c = make_complex([n0, n1], [d])
        ours, oracle = cohomology_profile(c), smith_profile(c)
        for a, b in zip(ours.entries, oracle.entries):
            assert a.is_finite == b.is_finite
            if a.is_finite:
                assert a.dimension == b.dimension
            else:
                assert a.signature == b.signature


def test_smith_profile_rejects_several_variables():
    ring = PolynomialRing.x_ring(2, 3)
    with pytest.raises(StructuralError, match="one-variable"):
        smith_profile(koszul_complex(ring.gens()))


def test_minimize_splits_off_unit_entries(pushforward_a1):
    small = minimize(pushforward_a1)
    assert small.ranks == (1, 1)
    assert small.differential(0).is_zero()


def test_minimization_does_not_change_cohomology():
    ring = PolynomialRing.x_ring(2, 3)
    c = koszul_complex([ring.parse("x0"), ring.parse("x1"), ring.one()])
    assert cohomology_profile(c, minimal=False).finite_values() == [0, 0, 0, 0]
    assert cohomology_profile(c).finite_values() == [0, 0, 0, 0]


def test_cohomology_modulo_relations():
    # R/(x0^2) with zero differential into R/(x0^3).
    ring = PolynomialRing.x_ring(1, 3)
    c = make_complex(
        [1, 1],
        [PolyMatrix.zero(ring, 1, 1)],
        relations=[PolyMatrix.from_text(ring, [["x0^2"]]), PolyMatrix.from_text(ring, [["x0^3"]])],
    )
    assert cohomology_profile(c).finite_values() == [2, 3]


def test_profile_record_round_trip(pushforward_a1):
    profile = cohomology_profile(pushforward_a1)
    again = CohomologyProfile.from_record(profile.to_record())
    assert again == profile


@pytest.mark.parametrize(
    "a,b,verdict",
    [
        ([1, 2], [1, 2], ComparisonVerdict.EQUAL),
        ([1, 2], [1, 1], ComparisonVerdict.FIRST_DOMINATES),
        ([0, 1], [1, 1], ComparisonVerdict.SECOND_DOMINATES),
        ([1, 0], [0, 1], ComparisonVerdict.MIXED),
    ],
)
def test_compare_finite_profiles(a, b, verdict):
    assert compare_profiles(finite_profile(a), finite_profile(b)) is verdict


def test_infinite_dominates_finite(pushforward_a1):
    profile = cohomology_profile(pushforward_a1)
    assert compare_profiles(profile, finite_profile([1, 1])) is ComparisonVerdict.FIRST_DOMINATES


def test_compare_rejects_different_degrees():
    with pytest.raises(StructuralError, match="different degrees"):
        compare_profiles(finite_profile([1, 2]), finite_profile([1, 2], start=1))


def test_finite_profile_indexing():
    profile = finite_profile([3, 4], start=2)
    assert profile.degrees == [2, 3]
    assert profile[3].dimension == Finite(4)
    with pytest.raises(KeyError):
        profile[0]
