import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from charp_core.exceptions import NonSmoothError, StructuralError

from charp_sdk.algebra.field import validate_prime
from charp_sdk.algebra.polynomial import PolynomialRing, SparsePolynomial
from charp_sdk.groebner.buchberger import ideal_groebner

logger = logging.getLogger(__name__)

MAX_AMBIENT_DIMENSION = 2


def dehomogenize(g: SparsePolynomial, chart: int) -> SparsePolynomial:
    """g with x_chart set to 1, kept in the same ring."""
    terms: Dict[Tuple[int, ...], int] = {}
    for m, c in g.term_dict().items():
        key = tuple(0 if i == chart else e for i, e in enumerate(m))
        terms[key] = (terms.get(key, 0) + c) % g.ring.p
    return SparsePolynomial(g.ring, terms)


def _is_homogeneous(g: SparsePolynomial) -> bool:
    return len({sum(m) for m in g.monomials()}) <= 1


@dataclass(frozen=True)
class ProjectiveVariety:
    """
    P^N for N <= 2, or a smooth plane curve V(G) ⊂ P^2.

    Homogeneous coordinates are x0..xN. The smoothness certificate of a curve
    records, per standard chart U_i, that (g_i, ∂g_i) is the unit ideal where
    g_i is G dehomogenized at x_i = 1; together the charts show that G and its
    partials have no common zero in P^2.

    Attributes:
        ring: F_p[x0, ..., xN].
        equation: G, or None for projective space.
        certificate: Per-chart Gröbner bases, as text.
    """

    ring: PolynomialRing
    equation: Optional[SparsePolynomial] = None
    certificate: Optional[List[List[str]]] = field(default=None, compare=False)

    @classmethod
    def projective_space(cls, n: int, p: int) -> "ProjectiveVariety":
        validate_prime(p)
        if not 1 <= n <= MAX_AMBIENT_DIMENSION:
            raise StructuralError(f"projective space P^{n} is outside the supported range 1..{MAX_AMBIENT_DIMENSION}")
        return cls(PolynomialRing.x_ring(n + 1, p))

    @classmethod
    def plane_curve(cls, g: SparsePolynomial) -> "ProjectiveVariety":
        """
        V(G) ⊂ P^2 after checking homogeneity and smoothness.

        Raises:
            StructuralError: If G is not a homogeneous form of positive degree in 3 variables.
            NonSmoothError: If some chart equation is singular.
        """
        if g.ring.n != 3:
            raise StructuralError(f"a plane curve needs 3 homogeneous coordinates, got {g.ring.n}")
        ring = PolynomialRing.x_ring(3, g.ring.p)
        g = g.rename(ring)
        if g.is_zero() or g.is_constant() or not _is_homogeneous(g):
            raise StructuralError(f"{g} is not a homogeneous form of positive degree")
        certificate = []
        for chart in range(3):
            local = dehomogenize(g, chart)
            partials = [local.partial_derivative(i) for i in range(3) if i != chart]
            gb = ideal_groebner([local] + partials)
            if not gb.is_whole_module():
                raise NonSmoothError(
                    f"V({g}) is singular on the chart x{chart} != 0 over F_{ring.p}: "
                    f"(g, dg) has Gröbner basis {gb.to_text()}"
                )
            certificate.append(gb.to_text())
        logger.debug(f"Smoothness certificate for V({g}) ⊂ P^2: {certificate}")
        return cls(ring, g, certificate)

    @classmethod
    def parse_curve(cls, text: str, p: int) -> "ProjectiveVariety":
        return cls.plane_curve(PolynomialRing.x_ring(3, p).parse(text))

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def ambient_dimension(self) -> int:
        return self.ring.n - 1

    @property
    def charts(self) -> int:
        return self.ring.n

    @property
    def degree(self) -> int:
        return self.equation.degree() if self.equation is not None else 1

    @property
    def dimension(self) -> int:
        return self.ambient_dimension - (0 if self.equation is None else 1)

    @property
    def satisfies_prime_bound(self) -> bool:
        """p > dim X, needed for the degeneration statement."""
        return self.p > self.dimension

    def default_truncation(self) -> int:
        """
        First truncation D of the default window: max(2, 2d - 3) for degree d.

        Plane curves of degree d >= 4 have not stabilized below 2d - 3; the
        Fermat quartic still shows h^{1,1} = 4 at D = 4.
        """
        return max(2, 2 * self.degree - 3)

    def gluing_data(self) -> Dict[str, List[str]]:
        """Chart equations and coordinate transitions t_j = x_j / x_i of the standard cover."""
        names = self.ring.variables
        transitions = [
            f"U{i}∩U{j}: {names[k]}/{names[i]} = ({names[k]}/{names[j]})·({names[j]}/{names[i]})"
            for i in range(self.charts)
            for j in range(i + 1, self.charts)
            for k in range(self.charts)
            if k not in (i, j)
        ] or [f"U0∩U1: {names[1]}/{names[0]} = 1/({names[0]}/{names[1]})"]
        equations = (
            [f"U{i}: {dehomogenize(self.equation, i)}" for i in range(self.charts)] if self.equation is not None else []
        )
        return {"transitions": transitions, "chart_equations": equations}

    def describe(self) -> str:
        if self.equation is None:
            return f"P^{self.ambient_dimension} over F_{self.p}"
        return f"V({self.equation}) ⊂ P^2 over F_{self.p}"
