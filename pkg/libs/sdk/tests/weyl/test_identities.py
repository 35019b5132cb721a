import pytest

from charp_sdk.algebra import PolynomialRing
from charp_sdk.weyl import (
    WeylElement,
    WeylIdentityResult,
    is_associative,
    psi_lemma_holds,
    twist_is_automorphism,
    weyl_identities,
)


def test_psi_lemma_for_a_square():
    ring = PolynomialRing.x_ring(1, 3)
    assert psi_lemma_holds(ring.parse("x0^2"), 0)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_psi_lemma_for_two_variables(p):
    ring = PolynomialRing.x_ring(2, p)
    f = ring.parse("x0^3 + x0*x1^2 + 2*x1")
    assert psi_lemma_holds(f, 0)
    assert psi_lemma_holds(f, 1)


def test_twist_by_a_function_is_an_automorphism(ring3):
    f = ring3.parse("x0*x1^2")
    a = WeylElement.d(2, 3, 0)
    b = WeylElement.d(2, 3, 1) + WeylElement.x(2, 3, 0)
    assert twist_is_automorphism(f, a, b)
    assert is_associative(a, b, a)


@pytest.mark.parametrize("n,p", [(1, 2), (1, 3), (2, 3), (1, 5)])
def test_sampled_identities_hold(n, p):
    result = weyl_identities(n, p, samples=3, seed=7)
    assert result.passed
    assert result.failures == {}
    assert set(result.checks) == {"psi_lemma", "centrality", "associativity", "psi_automorphism"}
    assert result.counts["psi_lemma"] == 3 * n
    assert result.counts["centrality"] == 3


def test_identities_are_reproducible_from_the_seed():
    a = weyl_identities(1, 3, samples=2, seed=11).outcome()
    b = weyl_identities(1, 3, samples=2, seed=11).outcome()
    assert a == b
    assert a.tables["seed"] == 11


def test_first_failure_is_kept_as_witness():
    result = WeylIdentityResult(n=1, p=3, samples=2, seed=0, max_degree=3)
    result.record("centrality", True, "first")
    result.record("centrality", False, "second")
    result.record("centrality", False, "third")
    assert not result.passed
    assert result.failures == {"centrality": "second"}
    assert result.outcome().witnesses == {"failures": {"centrality": "second"}}
