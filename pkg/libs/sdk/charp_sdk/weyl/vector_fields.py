import logging
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from charp_core.exceptions import StructuralError

from charp_sdk.algebra.polynomial import PolynomialRing, SparsePolynomial
from charp_sdk.weyl.element import WeylElement, weyl_mul, weyl_sum

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VectorField:
    """θ = Σ g_i ∂_i with polynomial coefficients (first order, no order-0 part)."""

    ring: PolynomialRing
    coefficients: Tuple[SparsePolynomial, ...]

    def __post_init__(self) -> None:
        if len(self.coefficients) != self.ring.n:
            raise StructuralError(
                f"vector field with {len(self.coefficients)} coefficients on {self.ring}"
            )
        for c in self.coefficients:
            if c.ring != self.ring:
                raise StructuralError(f"vector field coefficient in {c.ring}, expected {self.ring}")

    @classmethod
    def coordinate(cls, ring: PolynomialRing, i: int) -> "VectorField":
        ring.check_index(i)
        return cls(ring, tuple(ring.one() if k == i else ring.zero() for k in range(ring.n)))

    @classmethod
    def from_coefficients(cls, ring: PolynomialRing, coefficients: Sequence[SparsePolynomial]) -> "VectorField":
        return cls(ring, tuple(coefficients))

    def apply(self, g: SparsePolynomial) -> SparsePolynomial:
        """θ(g) = Σ g_i ∂g/∂x_i"""
        result = self.ring.zero()
        for i, c in enumerate(self.coefficients):
            if not c.is_zero():
                result = result + c * g.partial_derivative(i)
        return result

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coefficients)

    def to_weyl(self) -> WeylElement:
        n, p = self.ring.n, self.ring.p
        terms: Dict = {}
        for i, c in enumerate(self.coefficients):
            b = tuple(1 if k == i else 0 for k in range(n))
            for a, v in c.term_dict().items():
                terms[(a, b)] = v
        return WeylElement(n, p, terms)

    def rename(self, target: PolynomialRing) -> "VectorField":
        return VectorField(target, tuple(c.rename(target) for c in self.coefficients))

    def __str__(self) -> str:
        parts = [f"({c})*d{i}" for i, c in enumerate(self.coefficients) if not c.is_zero()]
        return " + ".join(parts) if parts else "0"


def restricted_power(theta: VectorField) -> VectorField:
    """
    θ^[p]: the derivation acting on functions as θ^p does.

    Computed on coordinates as Σ_i θ^p(x_i) ∂_i by p-fold application.
    """
    p = theta.ring.p
    coeffs = []
    for x in theta.ring.gens():
        g = x
        for _ in range(p):
            g = theta.apply(g)
            if g.is_zero():
                break
        coeffs.append(g)
    return VectorField(theta.ring, tuple(coeffs))


def center_map(theta_twisted: VectorField, x_ring: Optional[PolynomialRing] = None) -> WeylElement:
    """
    ι(θ') = θ^p − θ^[p] in the Weyl algebra of X.

    θ' is a vector field on X' with coefficients in the y-ring; θ is the
    field with the same coefficients read in x. The result equals
    Σ_i g_i(x^p) ∂_i^p, so ι is O_{X'}-linear, and it is central.
    """
    source = theta_twisted.ring
    x_ring = x_ring or PolynomialRing.x_ring(source.n, source.p)
    theta = theta_twisted.rename(x_ring) if source != x_ring else theta_twisted
    op = theta.to_weyl()
    power = op ** x_ring.p
    result = power - restricted_power(theta).to_weyl()
    logger.debug(f"center_map({theta_twisted}) = {result}")
    return result


def twist_automorphism(f: SparsePolynomial, a: WeylElement) -> WeylElement:
    """
    ψ_f: x_i ↦ x_i, ∂_i ↦ ∂_i − ∂_i(f), applied by substituting generators.

    ψ_{−f} is the inverse of ψ_f.
    """
    n, p = f.ring.n, f.ring.p
    if a.n != n or a.p != p:
        raise StructuralError(f"twist by a function on {f.ring} applied to a Weyl element with n={a.n}, p={a.p}")
    shifted = [WeylElement.d(n, p, i) - WeylElement.from_polynomial(f.partial_derivative(i)) for i in range(n)]
    powers: Dict[Tuple[int, int], WeylElement] = {}

    def power(i: int, e: int) -> WeylElement:
        key = (i, e)
        if key not in powers:
            powers[key] = shifted[i] ** e
        return powers[key]

    terms = []
    for (xa, db), c in a.term_dict().items():
        z = (0,) * n
        value = WeylElement(n, p, {(xa, z): c})
        for i, e in enumerate(db):
            if e:
                value = weyl_mul(value, power(i, e))
        terms.append(value)
    return weyl_sum(n, p, terms)
