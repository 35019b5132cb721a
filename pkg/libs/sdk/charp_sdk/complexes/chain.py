import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple

from charp_core.exceptions import NonComplexError, StructuralError

from charp_sdk.algebra.matrix import PolyMatrix
from charp_sdk.algebra.polynomial import PolynomialRing, SparsePolynomial
from charp_sdk.groebner.buchberger import module_groebner
from charp_sdk.groebner.kernels import columns_as_vectors

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChainComplex:
    """
    A bounded cochain complex of finitely presented modules over a polynomial ring.

    The term in degree `start + q` is R^{ranks[q]} modulo the column span of
    `relations[q]` (no relations: a free module). `differentials[q]` is the
    ranks[q+1] x ranks[q] matrix of d: C^{start+q} -> C^{start+q+1}.

    Instances are built through `make_complex`, which verifies that the maps
    compose to zero and preserve the relation modules.
    """

    ring: PolynomialRing
    ranks: Tuple[int, ...]
    differentials: Tuple[PolyMatrix, ...]
    relations: Tuple[Optional[PolyMatrix], ...]
    start: int = 0

    @property
    def degrees(self) -> range:
        return range(self.start, self.start + len(self.ranks))

    def rank(self, degree: int) -> int:
        return self.ranks[degree - self.start]

    def differential(self, degree: int) -> PolyMatrix:
        """d: C^degree -> C^{degree+1}; the zero map at the ends."""
        q = degree - self.start
        if 0 <= q < len(self.differentials):
            return self.differentials[q]
        rows = self.ranks[q + 1] if 0 <= q + 1 < len(self.ranks) else 0
        cols = self.ranks[q] if 0 <= q < len(self.ranks) else 0
        return PolyMatrix.zero(self.ring, rows, cols)

    def relation(self, degree: int) -> PolyMatrix:
        """Relation generators of C^degree as columns (possibly zero of them)."""
        q = degree - self.start
        if 0 <= q < len(self.relations) and self.relations[q] is not None:
            return self.relations[q]
        rank = self.ranks[q] if 0 <= q < len(self.ranks) else 0
        return PolyMatrix.zero(self.ring, rank, 0)

    @property
    def has_relations(self) -> bool:
        return any(r is not None and r.cols > 0 for r in self.relations)

    def euler_characteristic(self, profile: Optional[Any] = None) -> Optional[int]:
        """Alternating sum of cohomology dimensions, or None if one is infinite."""
        if profile is None:
            from charp_sdk.complexes.cohomology import cohomology_profile

            profile = cohomology_profile(self)
        return profile.euler_characteristic()

    def with_trivial_summand(self, degree: int) -> "ChainComplex":
        """Direct sum with 0 -> R -> R -> 0 placed in degrees (degree, degree+1)."""
        q = degree - self.start
        if not 0 <= q < len(self.ranks) - 1:
            raise StructuralError(f"no room for a trivial summand at degree {degree}")
        ring = self.ring
        ranks = list(self.ranks)
        ranks[q] += 1
        ranks[q + 1] += 1
        diffs = []
        for k, d in enumerate(self.differentials):
            rows = [list(r) for r in d.to_lists()]
            cols = d.cols
            if k == q:
                for r in rows:
                    r.append(ring.zero())
                rows.append([ring.zero()] * cols + [ring.one()])
            elif k == q - 1:
                rows.append([ring.zero()] * cols)
            elif k == q + 1:
                for r in rows:
                    r.append(ring.zero())
            diffs.append(PolyMatrix(ring, rows, ranks[k + 1], ranks[k]))
        rels = []
        for k, r in enumerate(self.relations):
            if r is None:
                rels.append(None)
            elif k in (q, q + 1):
                rels.append(r.vstack(PolyMatrix.zero(ring, 1, r.cols)))
            else:
                rels.append(r)
        return make_complex(ranks, diffs, ring=ring, relations=rels, start=self.start)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ring": {"variables": list(self.ring.variables), "p": self.ring.p},
            "start": self.start,
            "ranks": list(self.ranks),
            "differentials": [d.to_text() for d in self.differentials],
            "relations": [r.to_text() if r is not None else None for r in self.relations],
            "relation_counts": [r.cols if r is not None else 0 for r in self.relations],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ChainComplex":
        ring = PolynomialRing(tuple(data["ring"]["variables"]), int(data["ring"]["p"]))
        ranks = [int(r) for r in data["ranks"]]
        diffs = [
            _matrix_from_text(ring, text, ranks[k + 1], ranks[k])
            for k, text in enumerate(data["differentials"])
        ]
        counts = data.get("relation_counts") or [0] * len(ranks)
        rels: List[Optional[PolyMatrix]] = []
        for k, text in enumerate(data.get("relations") or [None] * len(ranks)):
            rels.append(None if text is None else _matrix_from_text(ring, text, ranks[k], int(counts[k])))
        return make_complex(ranks, diffs, ring=ring, relations=rels, start=int(data.get("start", 0)))


def _matrix_from_text(ring: PolynomialRing, text: Sequence[Sequence[str]], rows: int, cols: int) -> PolyMatrix:
    grid = [[ring.parse(cell) for cell in row] for row in text]
    return PolyMatrix(ring, grid, rows, cols)


def make_complex(
    ranks: Sequence[int],
    differentials: Sequence[PolyMatrix],
    ring: Optional[PolynomialRing] = None,
    relations: Optional[Sequence[Optional[PolyMatrix]]] = None,
    start: int = 0,
) -> ChainComplex:
    """
    Builds a ChainComplex, verifying that it is one.

    Args:
        ranks: Free rank of each term, lowest degree first.
        differentials: len(ranks) - 1 matrices, d_q of shape ranks[q+1] x ranks[q].
        ring: Base ring; inferred from the first differential when omitted.
        relations: Optional per-degree relation matrices (columns generate the
            submodule divided out of R^{ranks[q]}).
        start: Degree of the first term.

    Raises:
        StructuralError: On extent or ring mismatches.
        NonComplexError: If some d_{q+1} d_q does not vanish (modulo the
            relations of its target), or if d_q does not carry the relations
            of C^q into those of C^{q+1}.
    """
    ranks = tuple(int(r) for r in ranks)
    if any(r < 0 for r in ranks):
        raise StructuralError(f"negative rank in {ranks}")
    if len(differentials) != max(len(ranks) - 1, 0):
        raise StructuralError(f"{len(ranks)} terms need {len(ranks) - 1} differentials, got {len(differentials)}")
    if ring is None:
        if not differentials:
            raise StructuralError("ring must be given for a complex without differentials")
        ring = differentials[0].ring
    for q, d in enumerate(differentials):
        if d.ring != ring:
            raise StructuralError(f"differential {q} over {d.ring}, expected {ring}")
        if d.shape != (ranks[q + 1], ranks[q]):
            raise StructuralError(
                f"differential {q} has shape {d.shape}, expected {(ranks[q + 1], ranks[q])}"
            )
    rels: List[Optional[PolyMatrix]] = list(relations) if relations is not None else [None] * len(ranks)
    if len(rels) != len(ranks):
        raise StructuralError(f"{len(ranks)} terms but {len(rels)} relation entries")
    for q, r in enumerate(rels):
        if r is None:
            continue
        if r.ring != ring or r.rows != ranks[q]:
            raise StructuralError(f"relations of degree {start + q} have shape {r.shape} for rank {ranks[q]}")
        if r.cols == 0:
            rels[q] = None

    complex_ = ChainComplex(ring, ranks, tuple(differentials), tuple(rels), start)
    _verify(complex_)
    logger.debug(f"Complex over {ring} with ranks {ranks} verified")
    return complex_


def _verify(c: ChainComplex) -> None:
    for q, d in enumerate(c.differentials):
        degree = c.start + q
        target_rel = c.relations[q + 1]
        source_rel = c.relations[q]
        if source_rel is not None:
            image = d @ source_rel
            if not _inside(image, target_rel):
                raise NonComplexError(
                    degree, image, f"d_{degree} does not preserve the relations of degree {degree}"
                )
        if q + 1 < len(c.differentials):
            product = c.differentials[q + 1] @ d
            if not _inside(product, c.relations[q + 2]):
                raise NonComplexError(degree, product)


def _inside(m: PolyMatrix, relations: Optional[PolyMatrix]) -> bool:
    """Every column of m lies in the span of the relation columns."""
    if m.is_zero():
        return True
    if relations is None:
        return False
    gb = module_groebner(columns_as_vectors(relations), ring=m.ring, rank=m.rows)
    return all(gb.contains(v) for v in columns_as_vectors(m))


def exterior_basis(n: int, q: int) -> List[Tuple[int, ...]]:
    """Increasing q-subsets of range(n) in lexicographic order."""
    return list(combinations(range(n), q))


def wedge_sign(i: int, subset: Sequence[int]) -> int:
    """Sign of e_i ∧ e_S = sign · e_{S ∪ {i}}: (-1)^{#{j in S : j < i}}."""
    return -1 if sum(1 for j in subset if j < i) % 2 else 1


def koszul_complex(
    elements: Sequence[SparsePolynomial], ring: Optional[PolynomialRing] = None
) -> ChainComplex:
    """
    The Koszul complex on s_1..s_n: degree q is ∧^q R^n, d = (s_1 e_1 + ... + s_n e_n) ∧ -.

    Bases are the lexicographic q-subsets, so degree q has rank C(n, q).
    """
    if ring is None:
        if not elements:
            raise StructuralError("ring must be given for an empty Koszul complex")
        ring = elements[0].ring
    for s in elements:
        if s.ring != ring:
            raise StructuralError(f"Koszul element in {s.ring}, expected {ring}")
    n = len(elements)
    bases = [exterior_basis(n, q) for q in range(n + 1)]
    diffs = []
    for q in range(n):
        index = {S: k for k, S in enumerate(bases[q + 1])}
        grid = [[ring.zero()] * len(bases[q]) for _ in bases[q + 1]]
        for col, S in enumerate(bases[q]):
            for i in range(n):
                if i in S:
                    continue
                row = index[tuple(sorted(S + (i,)))]
                s = elements[i]
                grid[row][col] = s if wedge_sign(i, S) > 0 else -s
        diffs.append(PolyMatrix(ring, grid, len(bases[q + 1]), len(bases[q])))
    return make_complex([len(b) for b in bases], diffs, ring=ring)
