import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Tuple

import numpy as np
from charp_core.exceptions import InternalInconsistencyError

from charp_sdk.algebra.polynomial import Monomial, PolynomialRing, SparsePolynomial, monomial_product
from charp_sdk.algebra.sampling import monomials_of_degree
from charp_sdk.complexes.chain import exterior_basis, wedge_sign
from charp_sdk.complexes.forms import Form, Subset
from charp_sdk.linalg.fp_matrix import FpMatrix, RowReducer, rref
from charp_sdk.projective.varieties import ProjectiveVariety

logger = logging.getLogger(__name__)

FormKey = Tuple[Subset, Monomial]


@dataclass(frozen=True)
class FormCoordinates:
    """
    Monomial coordinates on polynomial q-forms of weight m in n variables.

    The weight of x^a dx_S is |a| + |S|, so the coefficients of a weight-m
    q-form are homogeneous of degree m - q. Keys run over q-subsets S, then
    monomials a in grevlex order.
    """

    n: int
    q: int
    weight: int
    keys: Tuple[FormKey, ...] = field(init=False)
    index: Dict[FormKey, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        monos = monomials_of_degree(self.n, self.weight - self.q)
        keys = tuple((S, a) for S in exterior_basis(self.n, self.q) for a in monos)
        object.__setattr__(self, "keys", keys)
        object.__setattr__(self, "index", {k: i for i, k in enumerate(keys)})

    @property
    def size(self) -> int:
        return len(self.keys)

    def vector(self, form: Form) -> np.ndarray:
        out = np.zeros(self.size, dtype=np.int64)
        for S, g in form.items():
            for a, c in g.term_dict().items():
                key = (S, a)
                if key not in self.index:
                    raise InternalInconsistencyError(f"x^{a} dx_{S} is not a {self.q}-form of weight {self.weight}")
                out[self.index[key]] = c
        return out

    def form(self, ring: PolynomialRing, vector: np.ndarray) -> Form:
        buckets: Dict[Subset, Dict[Monomial, int]] = {}
        for k in np.flatnonzero(vector):
            S, a = self.keys[int(k)]
            buckets.setdefault(S, {})[a] = int(vector[k])
        return {S: SparsePolynomial(ring, terms) for S, terms in buckets.items()}


@lru_cache(maxsize=256)
def form_coordinates(n: int, q: int, weight: int) -> FormCoordinates:
    return FormCoordinates(n, q, weight)


def _multiples(g: SparsePolynomial, source: FormCoordinates, target: FormCoordinates) -> np.ndarray:
    """Rows g·(x^a dx_S) for every key of `source`."""
    rows = np.zeros((source.size, target.size), dtype=np.int64)
    terms = g.term_dict().items()
    for r, (S, a) in enumerate(source.keys):
        for m, c in terms:
            rows[r, target.index[(S, monomial_product(a, m))]] += c
    return rows % g.ring.p


def _wedges(g: SparsePolynomial, source: FormCoordinates, target: FormCoordinates) -> np.ndarray:
    """Rows dg ∧ (x^a dx_T) for every key of `source`."""
    n = source.n
    gradient = [g.partial_derivative(i).term_dict().items() for i in range(n)]
    rows = np.zeros((source.size, target.size), dtype=np.int64)
    for r, (T, a) in enumerate(source.keys):
        for i in range(n):
            if i in T:
                continue
            S = tuple(sorted(T + (i,)))
            sign = wedge_sign(i, T)
            for m, c in gradient[i]:
                rows[r, target.index[(S, monomial_product(a, m))]] += sign * c
    return rows % g.ring.p


def _euler_contractions(source: FormCoordinates, target: FormCoordinates, p: int) -> np.ndarray:
    """Rows ι_E(x^a dx_S) with E = Σ x_i ∂_i the Euler field."""
    rows = np.zeros((source.size, target.size), dtype=np.int64)
    for r, (S, a) in enumerate(source.keys):
        for t, s in enumerate(S):
            bumped = tuple(e + 1 if i == s else e for i, e in enumerate(a))
            rows[r, target.index[(S[:t] + S[t + 1 :], bumped)]] += 1 if t % 2 == 0 else -1
    return rows % p


def relation_rows(variety: ProjectiveVariety, q: int, weight: int) -> np.ndarray:
    """
    Spanning rows of G·Ω^q + dG ∧ Ω^{q-1} in weight m.

    Empty for projective space, where the module of forms is free of relations.
    """
    n, p = variety.ring.n, variety.p
    target = form_coordinates(n, q, weight)
    g = variety.equation
    if g is None:
        return np.zeros((0, target.size), dtype=np.int64)
    d = g.degree()
    blocks = [_multiples(g, form_coordinates(n, q, weight - d), target)]
    if q > 0:
        blocks.append(_wedges(g, form_coordinates(n, q - 1, weight - d), target))
    return np.vstack(blocks) % p


@dataclass
class SectionSpace:
    """
    M^q_m: basic weight-m q-forms on X modulo the relations of X.

    A q-form w is basic when ι_E w vanishes on X. Dividing a basic form of
    weight m·|I| by x_I^m gives a section of Ω^q over the chart intersection
    U_I; this is how chart sections are stored.

    Attributes:
        coordinates: Ambient monomial coordinates.
        relations: Reducer for the relation subspace R.
        sections: Reducer on K/R inside A/R, K the basic forms.
    """

    q: int
    weight: int
    coordinates: FormCoordinates
    relations: RowReducer
    sections: RowReducer

    @property
    def dimension(self) -> int:
        return self.sections.rank

    def lifts(self) -> np.ndarray:
        """Representatives in the ambient coordinates, one row per basis element."""
        return self.relations.lift_quotient(self.sections.basis)

    def coordinates_of(self, vectors: np.ndarray) -> np.ndarray:
        """
        Coordinates in the section basis.

        Raises:
            InternalInconsistencyError: If some vector is not a basic form.
        """
        return self.sections.coordinates(self.relations.quotient_coordinates(vectors))


def section_space(variety: ProjectiveVariety, q: int, weight: int) -> SectionSpace:
    n, p = variety.ring.n, variety.p
    coords = form_coordinates(n, q, weight)
    relations = RowReducer(relation_rows(variety, q, weight), coords.size, p)
    if q == 0 or coords.size == 0:
        basic = np.eye(coords.size, dtype=np.int64)
    else:
        lower = form_coordinates(n, q - 1, weight)
        lower_relations = RowReducer(relation_rows(variety, q - 1, weight), lower.size, p)
        images = lower_relations.quotient_coordinates(_euler_contractions(coords, lower, p))
        if images.shape[1] == 0:
            basic = np.eye(coords.size, dtype=np.int64)
        else:
            kernel = rref(FpMatrix(images.T, p)).kernel
            basic = np.array(kernel, dtype=np.int64).reshape(-1, coords.size)
    sections = RowReducer(relations.quotient_coordinates(basic), relations.quotient_dimension, p)
    logger.debug(
        f"M^{q}_{weight} of {variety.describe()}: ambient {coords.size}, relations {relations.rank}, "
        f"dimension {sections.rank}"
    )
    return SectionSpace(q, weight, coords, relations, sections)


def forms_of(space: SectionSpace, ring: PolynomialRing) -> List[Form]:
    return [space.coordinates.form(ring, row) for row in space.lifts()]
