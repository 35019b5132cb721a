import random
from itertools import combinations_with_replacement, product
from typing import List

from charp_sdk.algebra.polynomial import (
    Monomial,
    PolynomialRing,
    SparsePolynomial,
    grevlex_key,
)


def monomials_up_to(n: int, degree: int) -> List[Monomial]:
    """All exponent tuples in n variables of total degree <= degree, in grevlex-ascending order."""
    monos = [m for m in product(range(degree + 1), repeat=n) if sum(m) <= degree]
    return sorted(monos, key=grevlex_key)


def random_polynomial(
    ring: PolynomialRing, max_degree: int, rng: random.Random, density: float = 0.5
) -> SparsePolynomial:
    """A random polynomial with each monomial of degree <= max_degree present with probability `density`."""
    terms = {}
    for mono in monomials_up_to(ring.n, max_degree):
        if rng.random() < density:
            terms[mono] = rng.randrange(1, ring.p)
    return SparsePolynomial(ring, terms)


def monomials_of_degree(n: int, degree: int) -> List[Monomial]:
    """Exponent tuples in n variables of total degree exactly `degree`, grevlex-ascending; empty when degree < 0."""
    if degree < 0:
        return []
    monos = []
    for combo in combinations_with_replacement(range(n), degree):
        exps = [0] * n
        for i in combo:
            exps[i] += 1
        monos.append(tuple(exps))
    return sorted(monos, key=grevlex_key)
