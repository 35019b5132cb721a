import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from charp_core.exceptions import NonSmoothError, StructuralError

from charp_sdk.algebra.polynomial import PolynomialRing, SparsePolynomial
from charp_sdk.frobenius.structure import FrobeniusStructure
from charp_sdk.groebner.buchberger import ModuleGroebnerBasis, ideal_groebner

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AffineVariety:
    """
    A^n, or a smooth hypersurface V(g) ⊂ A^n.

    The smoothness certificate is the reduced Gröbner basis of (g, ∂_0 g, ..., ∂_{n-1} g),
    which is {1} exactly when V(g) has no singular point over the algebraic closure.

    Attributes:
        structure: The Frobenius dictionary of the ambient affine space.
        equations: Empty for A^n, (g,) for a hypersurface.
        certificate: Gröbner basis witnessing smoothness (None for A^n).
    """

    structure: FrobeniusStructure
    equations: Tuple[SparsePolynomial, ...] = ()
    certificate: Optional[ModuleGroebnerBasis] = field(default=None, compare=False)

    @classmethod
    def affine_space(cls, n: int, p: int) -> "AffineVariety":
        return cls(FrobeniusStructure(n, p))

    @classmethod
    def hypersurface(cls, g: SparsePolynomial) -> "AffineVariety":
        """
        V(g) after checking it is smooth.

        Raises:
            StructuralError: If g is constant.
            NonSmoothError: If (g, ∂g) is not the unit ideal.
        """
        ring = g.ring
        structure = FrobeniusStructure(ring.n, ring.p)
        if ring != structure.x_ring:
            g = g.rename(structure.x_ring)
        if g.is_constant():
            raise StructuralError(f"hypersurface equation must be non-constant, got {g}")
        certificate = ideal_groebner([g] + [g.partial_derivative(i) for i in range(ring.n)])
        if not certificate.is_whole_module():
            raise NonSmoothError(
                f"V({g}) is singular over F_{ring.p}: (g, dg) has Gröbner basis {certificate.to_text()}"
            )
        logger.debug(f"Smoothness certificate for V({g}): {certificate.to_text()}")
        return cls(structure, (g,), certificate)

    @property
    def n(self) -> int:
        return self.structure.n

    @property
    def p(self) -> int:
        return self.structure.p

    @property
    def x_ring(self) -> PolynomialRing:
        return self.structure.x_ring

    @property
    def y_ring(self) -> PolynomialRing:
        return self.structure.y_ring

    @property
    def is_affine_space(self) -> bool:
        return not self.equations

    @property
    def dimension(self) -> int:
        return self.n - len(self.equations)

    @property
    def satisfies_prime_bound(self) -> bool:
        """p > dim X, the hypothesis of the theorem-level checks."""
        return self.p > self.dimension

    def twisted_equations(self) -> List[SparsePolynomial]:
        """The equations of X′ in the y-ring."""
        return [g.p_power_substitute(self.y_ring) for g in self.equations]

    def describe(self) -> str:
        if self.is_affine_space:
            return f"A^{self.n} over F_{self.p}"
        return f"V({self.equations[0]}) in A^{self.n} over F_{self.p}"
