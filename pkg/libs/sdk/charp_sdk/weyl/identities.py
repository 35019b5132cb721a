import logging
import random
from dataclasses import dataclass, field
from typing import Dict

from charp_core.types import ExperimentOutcome

from charp_sdk.algebra.polynomial import PolynomialRing, SparsePolynomial
from charp_sdk.algebra.sampling import monomials_up_to, random_polynomial
from charp_sdk.weyl.element import WeylElement, weyl_mul, weyl_sum
from charp_sdk.weyl.vector_fields import VectorField, center_map, twist_automorphism

logger = logging.getLogger(__name__)

MAX_SAMPLE_ORDER = 2
VECTOR_FIELD_DEGREE = 2


def random_weyl_element(
    ring: PolynomialRing, rng: random.Random, max_degree: int, max_order: int = MAX_SAMPLE_ORDER
) -> WeylElement:
    """Σ_b g_b ∂^b over |b| <= max_order with random coefficients of degree <= max_degree."""
    n, p = ring.n, ring.p
    parts = []
    for b in monomials_up_to(n, max_order):
        g = random_polynomial(ring, max_degree, rng, density=0.3)
        parts.append(WeylElement(n, p, {(a, b): c for a, c in g.term_dict().items()}))
    return weyl_sum(n, p, parts)


def random_vector_field(ring: PolynomialRing, rng: random.Random, max_degree: int = VECTOR_FIELD_DEGREE) -> VectorField:
    return VectorField(ring, tuple(random_polynomial(ring, max_degree, rng) for _ in range(ring.n)))


def psi_lemma_holds(f: SparsePolynomial, i: int) -> bool:
    """ψ_f(∂_i^p − ∂_i^[p]) = (∂_i^p − ∂_i^[p]) − (∂_i f)^p."""
    ring = f.ring
    central = center_map(VectorField.coordinate(ring.frobenius_twist(), i), ring)
    expected = central - WeylElement.from_polynomial(f.partial_derivative(i) ** ring.p)
    return twist_automorphism(f, central) == expected


def is_central(element: WeylElement) -> bool:
    """[element, x_i] = [element, ∂_i] = 0 for every i."""
    n, p = element.n, element.p
    generators = [WeylElement.x(n, p, i) for i in range(n)] + [WeylElement.d(n, p, i) for i in range(n)]
    return all(element.commutator(g).is_zero() for g in generators)


def is_associative(a: WeylElement, b: WeylElement, c: WeylElement) -> bool:
    return weyl_mul(weyl_mul(a, b), c) == weyl_mul(a, weyl_mul(b, c))


def twist_is_automorphism(f: SparsePolynomial, a: WeylElement, b: WeylElement) -> bool:
    """ψ(ab) = ψ(a)ψ(b), and twisting by −f undoes ψ."""
    psi_a, psi_b = twist_automorphism(f, a), twist_automorphism(f, b)
    multiplicative = twist_automorphism(f, weyl_mul(a, b)) == weyl_mul(psi_a, psi_b)
    invertible = twist_automorphism(-f, psi_a) == a
    return multiplicative and invertible


@dataclass
class WeylIdentityResult:
    """
    Identity checks of the crystalline Weyl algebra on seeded random samples.

    Attributes:
        counts: Samples checked per identity.
        failures: Text of the first failing sample per identity.
    """

    n: int
    p: int
    samples: int
    seed: int
    max_degree: int
    checks: Dict[str, bool] = field(default_factory=dict)
    counts: Dict[str, int] = field(default_factory=dict)
    failures: Dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def record(self, name: str, ok: bool, witness: str) -> None:
        self.counts[name] = self.counts.get(name, 0) + 1
        self.checks[name] = self.checks.get(name, True) and ok
        if not ok and name not in self.failures:
            self.failures[name] = witness

    def outcome(self) -> ExperimentOutcome:
        return ExperimentOutcome(
            checks=dict(self.checks),
            tables={"samples": self.samples, "seed": self.seed, "counts": dict(self.counts)},
            witnesses={"failures": dict(self.failures)},
        )


def weyl_identities(n: int, p: int, samples: int = 20, seed: int = 0, max_degree: int = 3) -> WeylIdentityResult:
    """
    Runs the ψ-Lemma, centrality, associativity and ψ-automorphism checks.

    Superpotentials have degree <= max_degree; vector fields for centrality
    have coefficients of degree <= 2; operators for associativity and the
    automorphism checks have order <= 2 and coefficient degree <= 1.
    """
    ring = PolynomialRing.x_ring(n, p)
    twisted = ring.frobenius_twist()
    rng = random.Random(seed)
    result = WeylIdentityResult(n, p, samples, seed, max_degree)
    for _ in range(samples):
        f = random_polynomial(ring, max_degree, rng)
        for i in range(n):
            result.record("psi_lemma", psi_lemma_holds(f, i), f"f = {f}, i = {i}")

        theta = random_vector_field(twisted, rng)
        result.record("centrality", is_central(center_map(theta, ring)), f"θ′ = {theta}")

        a, b, c = (random_weyl_element(ring, rng, 1) for _ in range(3))
        result.record("associativity", is_associative(a, b, c), f"a = {a}, b = {b}, c = {c}")
        result.record("psi_automorphism", twist_is_automorphism(f, a, b), f"f = {f}, a = {a}, b = {b}")
    logger.info(f"Weyl identities for n={n}, p={p}: {result.checks}")
    return result
