import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from charp_core.exceptions import StructuralError

from charp_sdk.algebra.field import validate_prime
from charp_sdk.algebra.matrix import PolyMatrix
from charp_sdk.algebra.polynomial import Monomial, PolynomialRing, SparsePolynomial
from charp_sdk.complexes.chain import exterior_basis
from charp_sdk.complexes.forms import Form, Subset, wedge_one_form

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FrobeniusStructure:
    """
    The dictionary k[x] ≅ k[y]^{p^n}, y_i = x_i^p.

    A polynomial is written as Σ_a c_a(y) x^a over the basis exponents
    a ∈ [0, p)^n, listed lexicographically. q-forms g dx_S are indexed by
    S_index * p^n + a_index with S running over lexicographic q-subsets.
    """

    n: int
    p: int
    x_ring: PolynomialRing = field(init=False)
    y_ring: PolynomialRing = field(init=False)
    basis: Tuple[Monomial, ...] = field(init=False)
    _index: Dict[Monomial, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        validate_prime(self.p)
        if self.n < 1:
            raise StructuralError(f"need at least one variable, got n={self.n}")
        object.__setattr__(self, "x_ring", PolynomialRing.x_ring(self.n, self.p))
        object.__setattr__(self, "y_ring", PolynomialRing.y_ring(self.n, self.p))
        basis = tuple(product(range(self.p), repeat=self.n))
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "_index", {a: k for k, a in enumerate(basis)})

    @property
    def size(self) -> int:
        return len(self.basis)

    def index(self, a: Monomial) -> int:
        return self._index[tuple(a)]

    def subsets(self, q: int) -> List[Subset]:
        return exterior_basis(self.n, q)

    def form_rank(self, q: int) -> int:
        return self.size * len(self.subsets(q))

    def form_index(self, subset: Subset, a: Monomial, q: Optional[int] = None) -> int:
        q = len(subset) if q is None else q
        return self.subsets(q).index(tuple(subset)) * self.size + self.index(a)

    def pushforward(self, f: SparsePolynomial) -> List[SparsePolynomial]:
        """Components c_a(y) with f = Σ_a c_a(x^p) x^a."""
        if f.ring != self.x_ring:
            raise StructuralError(f"pushforward expects a polynomial in {self.x_ring}, got {f.ring}")
        buckets: List[Dict[Monomial, int]] = [{} for _ in self.basis]
        p = self.p
        for m, c in f.term_dict().items():
            a = tuple(e % p for e in m)
            q = tuple(e // p for e in m)
            buckets[self._index[a]][q] = c
        return [SparsePolynomial(self.y_ring, b) for b in buckets]

    def reconstruct(self, components: Sequence[SparsePolynomial]) -> SparsePolynomial:
        """Inverse of `pushforward`."""
        if len(components) != self.size:
            raise StructuralError(f"{len(components)} components for a basis of size {self.size}")
        terms: Dict[Monomial, int] = {}
        p = self.p
        for a, c in zip(self.basis, components):
            for q, v in c.term_dict().items():
                terms[tuple(p * qi + ai for qi, ai in zip(q, a))] = v
        return SparsePolynomial(self.x_ring, terms)

    def pushforward_form(self, q: int, coefficients: Form) -> List[SparsePolynomial]:
        """Coordinates over k[y] of Σ_S coefficients[S] dx_S, S ranging over q-subsets."""
        subsets = self.subsets(q)
        out = [self.y_ring.zero()] * (len(subsets) * self.size)
        for s_idx, S in enumerate(subsets):
            g = coefficients.get(S)
            if g is None or g.is_zero():
                continue
            for k, c in enumerate(self.pushforward(g)):
                out[s_idx * self.size + k] = c
        return out

    def reconstruct_form(self, q: int, vector: Sequence[SparsePolynomial]) -> Form:
        subsets = self.subsets(q)
        if len(vector) != len(subsets) * self.size:
            raise StructuralError(f"vector of length {len(vector)} is not a {q}-form for n={self.n}, p={self.p}")
        out = {}
        for s_idx, S in enumerate(subsets):
            block = vector[s_idx * self.size : (s_idx + 1) * self.size]
            g = self.reconstruct(block)
            if not g.is_zero():
                out[S] = g
        return out

    def wedge(self, one_form: Sequence[SparsePolynomial], q: int, coefficients: Form) -> Form:
        """(Σ_i h_i dx_i) ∧ Σ_S g_S dx_S, in x-coordinates."""
        return wedge_one_form(self.x_ring, one_form, coefficients)


def frobenius_pushforward(f: SparsePolynomial, structure: FrobeniusStructure) -> List[SparsePolynomial]:
    """The p^n components of f over k[y]; reconstruction is exact."""
    return structure.pushforward(f)


def form_differential(
    structure: FrobeniusStructure, q: int, f: Optional[SparsePolynomial] = None
) -> PolyMatrix:
    """
    The k[y]-matrix of d − df∧ : F_*Ω^q → F_*Ω^{q+1} on A^n (d itself when f is None or 0).

    Column (S, a) is the image of x^a dx_S:
    Σ_{i ∉ S} (∂_i x^a − x^a ∂_i f) dx_i ∧ dx_S, pushed forward.
    """
    fs = structure
    if f is not None and f.ring != fs.x_ring:
        raise StructuralError(f"superpotential in {f.ring}, expected {fs.x_ring}")
    partials = [f.partial_derivative(i) for i in range(fs.n)] if f is not None else [fs.x_ring.zero()] * fs.n
    source, target = fs.subsets(q), fs.subsets(q + 1)
    rows, cols = len(target) * fs.size, len(source) * fs.size
    columns = []
    for S in source:
        for a in fs.basis:
            xa = fs.x_ring.monomial(a)
            one_form = [xa.partial_derivative(i) - xa * partials[i] for i in range(fs.n)]
            image = fs.wedge(one_form, q, {S: fs.x_ring.one()})
            columns.append(fs.pushforward_form(q + 1, image) if target else [])
    return PolyMatrix.from_columns(fs.y_ring, columns, rows)
