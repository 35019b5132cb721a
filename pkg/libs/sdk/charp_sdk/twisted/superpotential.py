import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

from charp_core.exceptions import StructuralError

from charp_sdk.algebra.polynomial import PolynomialRing, SparsePolynomial
from charp_sdk.complexes.chain import ChainComplex, koszul_complex, make_complex
from charp_sdk.frobenius.structure import FrobeniusStructure, form_differential

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Superpotential:
    """
    A regular function f on A^n with its partials and its Frobenius twist f′.

    Attributes:
        f: The function, in the x-ring of its Frobenius structure.
        structure: The Frobenius dictionary of A^n.
    """

    f: SparsePolynomial
    structure: FrobeniusStructure = field(init=False, compare=False)

    def __post_init__(self) -> None:
        structure = FrobeniusStructure(self.f.ring.n, self.f.ring.p)
        if self.f.ring != structure.x_ring:
            object.__setattr__(self, "f", self.f.rename(structure.x_ring))
        object.__setattr__(self, "structure", structure)

    @classmethod
    def parse(cls, text: str, n: int, p: int) -> "Superpotential":
        return cls(PolynomialRing.x_ring(n, p).parse(text))

    @property
    def n(self) -> int:
        return self.structure.n

    @property
    def p(self) -> int:
        return self.structure.p

    @property
    def partials(self) -> Tuple[SparsePolynomial, ...]:
        return tuple(self.f.partial_derivative(i) for i in range(self.n))

    @property
    def twisted(self) -> SparsePolynomial:
        """f′ = π^* f in the y-ring."""
        return self.f.p_power_substitute(self.structure.y_ring)

    @property
    def twisted_partials(self) -> Tuple[SparsePolynomial, ...]:
        """∂f′/∂y_i, which equals (∂f/∂x_i)′."""
        return tuple(g.p_power_substitute(self.structure.y_ring) for g in self.partials)

    def __str__(self) -> str:
        return str(self.f)


def build_twisted_pushforward(
    superpotential: Superpotential, structure: Optional[FrobeniusStructure] = None
) -> ChainComplex:
    """
    F_*Ω•_{A^n, d − df∧} over k[y].

    Shares its construction with the de Rham pushforward; for f = 0 the
    matrices are identical.
    """
    fs = structure or superpotential.structure
    if (fs.n, fs.p) != (superpotential.n, superpotential.p):
        raise StructuralError(
            f"superpotential on A^{superpotential.n} over F_{superpotential.p} "
            f"with a Frobenius structure for n={fs.n}, p={fs.p}"
        )
    f = superpotential.f
    ranks = [fs.form_rank(q) for q in range(fs.n + 1)]
    diffs = [form_differential(fs, q, f) for q in range(fs.n)]
    complex_ = make_complex(ranks, diffs, ring=fs.y_ring)
    logger.debug(f"Twisted de Rham pushforward for f = {f}: ranks {ranks}")
    return complex_


def build_wedge_complex(superpotential: Superpotential) -> ChainComplex:
    """Ω•_{A^n′, ∧df′}: the Koszul complex on ∂f′/∂y_1, ..., ∂f′/∂y_n."""
    return koszul_complex(list(superpotential.twisted_partials), ring=superpotential.structure.y_ring)
