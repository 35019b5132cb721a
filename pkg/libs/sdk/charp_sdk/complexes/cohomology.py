import contextvars
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from charp_core.exceptions import StructuralError
from charp_core.types import (
    ComparisonVerdict,
    Dimension,
    Finite,
    InfiniteOrAbove,
    Record,
    dimension_from_record,
)

from charp_sdk.algebra.field import inverse_mod
from charp_sdk.algebra.matrix import PolyMatrix
from charp_sdk.algebra.polynomial import SparsePolynomial
from charp_sdk.complexes.chain import ChainComplex, make_complex
from charp_sdk.groebner.buchberger import ModuleGroebnerBasis, module_groebner
from charp_sdk.groebner.kernels import kernel_of_map, vectors_as_matrix
from charp_sdk.groebner.quotient import (
    ModuleSignature,
    hilbert_prefix,
    module_signature,
    quotient_k_dimension,
)
from charp_sdk.groebner.vectors import FreeModuleVector, ModuleOrder
from charp_sdk.linalg.smith import smith_normal_form

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CohomologyEntry:
    """
    The cohomology module in one degree.

    Attributes:
        degree: Cohomological degree.
        dimension: k-dimension (Finite or InfiniteOrAbove).
        free_rank: Rank when the module is free, else None.
        signature: (Krull dimension, multiplicity) when infinite-dimensional.
        hilbert: Hilbert-function prefix when infinite-dimensional.
    """

    degree: int
    dimension: Dimension
    free_rank: Optional[int] = None
    signature: Optional[ModuleSignature] = None
    hilbert: Optional[Tuple[int, ...]] = None

    @property
    def is_finite(self) -> bool:
        return isinstance(self.dimension, Finite)

    def to_record(self) -> Record:
        return {
            "degree": self.degree,
            "dimension": self.dimension.to_record(),
            "free_rank": self.free_rank,
            "signature": self.signature.to_record() if self.signature else None,
            "hilbert": list(self.hilbert) if self.hilbert is not None else None,
        }

    @classmethod
    def from_record(cls, record: Record) -> "CohomologyEntry":
        sig = record.get("signature")
        hilbert = record.get("hilbert")
        return cls(
            degree=int(record["degree"]),
            dimension=dimension_from_record(record["dimension"]),
            free_rank=record.get("free_rank"),
            signature=ModuleSignature.from_record(sig) if sig else None,
            hilbert=tuple(hilbert) if hilbert is not None else None,
        )

    def summary(self) -> str:
        if isinstance(self.dimension, Finite):
            return str(self.dimension.value)
        if self.free_rank is not None:
            return f"free({self.free_rank})"
        if self.signature is not None:
            return f"inf(dim={self.signature.krull_dimension},e={self.signature.multiplicity})"
        return "inf"


@dataclass(frozen=True)
class CohomologyProfile:
    """Cohomology entries covering exactly the degree range of a complex."""

    entries: Tuple[CohomologyEntry, ...]
    witnesses: Dict[int, Any] = field(default_factory=dict, compare=False, hash=False)

    @property
    def degrees(self) -> List[int]:
        return [e.degree for e in self.entries]

    def __getitem__(self, degree: int) -> CohomologyEntry:
        for e in self.entries:
            if e.degree == degree:
                return e
        raise KeyError(degree)

    def dimensions(self) -> List[Dimension]:
        return [e.dimension for e in self.entries]

    def finite_values(self) -> Optional[List[int]]:
        """Dimensions as integers, or None when one of them is infinite."""
        if not all(e.is_finite for e in self.entries):
            return None
        return [e.dimension.value for e in self.entries]  # type: ignore[union-attr]

    def free_ranks(self) -> List[Optional[int]]:
        return [e.free_rank for e in self.entries]

    def euler_characteristic(self) -> Optional[int]:
        values = self.finite_values()
        if values is None:
            return None
        return sum((-1) ** e.degree * v for e, v in zip(self.entries, values))

    def summary(self) -> List[str]:
        return [e.summary() for e in self.entries]

    def to_record(self) -> Record:
        return {"entries": [e.to_record() for e in self.entries], "summary": self.summary()}

    @classmethod
    def from_record(cls, record: Record) -> "CohomologyProfile":
        return cls(tuple(CohomologyEntry.from_record(e) for e in record["entries"]))


# --- Minimization ---


def minimize(c: ChainComplex) -> ChainComplex:
    """
    Cancels unit entries of the differentials (Gaussian elimination).

    For a unit u = d_q[i][j] the pair (e_j in degree q, e_i in degree q+1)
    is split off as an exact summand: d_q becomes
    d_q[r][s] - d_q[r][j] u^{-1} d_q[i][s] without row i and column j,
    d_{q-1} loses row j and d_{q+1} loses column i. The result has
    isomorphic cohomology. Complexes with relations are returned unchanged.
    """
    if c.has_relations:
        return c
    ring = c.ring
    p = ring.p
    ranks = list(c.ranks)
    diffs: List[List[List[SparsePolynomial]]] = [d.to_lists() for d in c.differentials]
    cancelled = 0
    for q in range(len(diffs)):
        while True:
            pivot = _find_unit(diffs[q])
            if pivot is None:
                break
            i, j = pivot
            d = diffs[q]
            u_inv = inverse_mod(d[i][j].constant_value(), p)
            pivot_row = d[i]
            new_rows = []
            for r, row in enumerate(d):
                if r == i:
                    continue
                factor = row[j]
                if factor.is_zero():
                    new_rows.append([e for s, e in enumerate(row) if s != j])
                    continue
                scale = factor.scale(u_inv)
                new_rows.append(
                    [
                        e - scale * pivot_row[s] if not pivot_row[s].is_zero() else e
                        for s, e in enumerate(row)
                        if s != j
                    ]
                )
            diffs[q] = new_rows
            if q > 0:
                diffs[q - 1] = [row for r, row in enumerate(diffs[q - 1]) if r != j]
            if q + 1 < len(diffs):
                diffs[q + 1] = [[e for s, e in enumerate(row) if s != i] for row in diffs[q + 1]]
            ranks[q] -= 1
            ranks[q + 1] -= 1
            cancelled += 1
    if not cancelled:
        return c
    logger.debug(f"Minimized ranks {list(c.ranks)} -> {ranks} ({cancelled} cancellations)")
    matrices = [PolyMatrix(ring, diffs[q], ranks[q + 1], ranks[q]) for q in range(len(diffs))]
    return make_complex(ranks, matrices, ring=ring, start=c.start)


def _find_unit(grid: List[List[SparsePolynomial]]) -> Optional[Tuple[int, int]]:
    for i, row in enumerate(grid):
        for j, e in enumerate(row):
            if not e.is_zero() and e.is_constant():
                return (i, j)
    return None


# --- Cohomology ---


@dataclass(frozen=True)
class CohomologyPresentation:
    """
    H = R^rank / relations, together with the cycle generators it is built on.

    Attributes:
        rank: Number of cycle generators.
        cycles: Matrix (term rank x `rank`) whose columns generate the cycles.
        relations: Gröbner basis (POT) of the relation module inside R^rank.
    """

    rank: int
    cycles: PolyMatrix
    relations: ModuleGroebnerBasis


def _projected_kernel(blocks: List[PolyMatrix], keep: int) -> List[FreeModuleVector]:
    """The first `keep` coordinates of the kernel of [blocks[0] | blocks[1] | ...]."""
    m = blocks[0].hstack(*blocks[1:])
    return [v.project(range(keep)) for v in kernel_of_map(m)]


def cycle_generators(c: ChainComplex, degree: int) -> PolyMatrix:
    """
    Generators of the cycles Z^degree as matrix columns.

    With relations these are the u with d(u) in the relations of the next
    term, the projection of ker [d | R_{degree+1}].
    """
    ring = c.ring
    rank = c.rank(degree)
    d = c.differential(degree)
    if d.rows == 0:
        return PolyMatrix.identity(ring, rank)
    rel = c.relation(degree + 1)
    vectors = _projected_kernel([d, rel], rank) if rel.cols else kernel_of_map(d)
    vectors = [v for v in vectors if not v.is_zero()]
    return vectors_as_matrix(ring, rank, vectors)


def present_cohomology(
    c: ChainComplex, degree: int, extra: Optional[PolyMatrix] = None
) -> CohomologyPresentation:
    """
    Presents H^degree = Z / (B + N) on the cycle generators K.

    The relation module is the projection of ker [K | d_{degree-1} | R_degree]
    onto the K-coordinates. Columns of `extra` (elements of the term in
    `degree`) are divided out as well, which presents Z / (B + N + span(extra)).
    """
    ring = c.ring
    cycles = cycle_generators(c, degree)
    k = cycles.cols
    incoming = c.differential(degree - 1)
    rel = c.relation(degree)
    blocks = [cycles]
    if incoming.cols:
        blocks.append(incoming)
    if rel.cols:
        blocks.append(rel)
    if extra is not None and extra.cols:
        blocks.append(extra)
    if k == 0:
        relations: List[FreeModuleVector] = []
    elif len(blocks) == 1:
        relations = kernel_of_map(cycles)
    else:
        relations = _projected_kernel(blocks, k)
    gb = module_groebner(relations, ModuleOrder.POT, ring=ring, rank=k)
    return CohomologyPresentation(rank=k, cycles=cycles, relations=gb)


def free_rank_of_quotient(rank: int, gb: ModuleGroebnerBasis) -> Optional[int]:
    """
    Rank of R^rank / sub when it is visibly free, else None.

    A reduced basis whose leading monomials are all 1 eliminates one
    coordinate per element and leaves a free module on the others.
    """
    if all(sum(mono) == 0 for _, mono in gb.leading_terms()):
        return rank - len(gb.generators)
    return None


def quotient_entry(degree: int, rank: int, gb: ModuleGroebnerBasis, degree_cap: int) -> CohomologyEntry:
    """Dimension, free rank and signature of R^rank / gb."""
    dimension = quotient_k_dimension(rank, gb, degree_cap)
    if isinstance(dimension, Finite):
        return CohomologyEntry(degree, dimension)
    free_rank = free_rank_of_quotient(rank, gb)
    top = module_groebner(list(gb.generators), ModuleOrder.TOP, ring=gb.ring, rank=rank)
    signature = module_signature(rank, top)
    lower = quotient_k_dimension(rank, top, degree_cap)
    hilbert = tuple(hilbert_prefix(rank, top, degree_cap))
    return CohomologyEntry(degree, lower, free_rank, signature, hilbert)


def _entry(c: ChainComplex, degree: int, degree_cap: int) -> Tuple[CohomologyEntry, CohomologyPresentation]:
    presentation = present_cohomology(c, degree)
    entry = quotient_entry(degree, presentation.rank, presentation.relations, degree_cap)
    logger.debug(f"H^{degree}: {entry.summary()}")
    return entry, presentation


def cohomology_profile(
    c: ChainComplex, degree_cap: int = 40, jobs: int = 1, minimal: bool = True
) -> CohomologyProfile:
    """
    Cohomology of every term of `c`, via Gröbner bases over the base ring.

    Args:
        c: The complex.
        degree_cap: Enumeration cap for infinite-dimensional entries.
        jobs: Degrees are computed concurrently on this many threads.
        minimal: Cancel unit entries first (see `minimize`).

    Returns:
        A profile whose witnesses map each degree to its presentation.
    """
    work = minimize(c) if minimal else c
    degrees = list(work.degrees)
    if jobs > 1 and len(degrees) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            # Each task runs in a copy of the caller's context so the cache binding is visible.
            futures = [
                pool.submit(contextvars.copy_context().run, _entry, work, q, degree_cap) for q in degrees
            ]
            results = [f.result() for f in futures]
    else:
        results = [_entry(work, q, degree_cap) for q in degrees]
    return CohomologyProfile(
        entries=tuple(e for e, _ in results),
        witnesses={q: pres for q, (_, pres) in zip(degrees, results)},
    )


def smith_profile(c: ChainComplex) -> CohomologyProfile:
    """
    Cohomology of a relation-free complex over k[y] from Smith normal forms.

    H^i = k[y]^{n_i - r_i - r_{i-1}} ⊕ ⊕ k[y]/(d) over the invariant factors d
    of d_{i-1}, where r_i is the rank of d_i.
    """
    if c.ring.n != 1:
        raise StructuralError(f"Smith cohomology needs a one-variable ring, got {c.ring}")
    if c.has_relations:
        raise StructuralError("Smith cohomology is only defined for complexes of free modules")
    factors = {q: smith_normal_form(c.differential(q)).invariant_factors for q in c.degrees}
    entries = []
    for q in c.degrees:
        incoming = factors.get(q - 1, [])
        free = c.rank(q) - len(factors[q]) - len(incoming)
        torsion = sum(f.degree() for f in incoming)
        if free == 0:
            entries.append(CohomologyEntry(q, Finite(torsion)))
        else:
            entries.append(
                CohomologyEntry(
                    q,
                    InfiniteOrAbove(cap=0),
                    free_rank=free if torsion == 0 else None,
                    signature=ModuleSignature(1, free),
                )
            )
    return CohomologyProfile(tuple(entries))


# --- Comparison ---


def compare_entries(a: CohomologyEntry, b: CohomologyEntry) -> Optional[int]:
    """Sign of a - b (finite by value, infinite by signature), or None if incomparable."""
    if a.is_finite and b.is_finite:
        va, vb = a.dimension.value, b.dimension.value  # type: ignore[union-attr]
        return (va > vb) - (va < vb)
    if a.is_finite != b.is_finite:
        return -1 if a.is_finite else 1
    if a.signature is None or b.signature is None:
        if a.free_rank is not None and b.free_rank is not None:
            return (a.free_rank > b.free_rank) - (a.free_rank < b.free_rank)
        return None
    sa = (a.signature.krull_dimension, a.signature.multiplicity)
    sb = (b.signature.krull_dimension, b.signature.multiplicity)
    if sa != sb:
        return 1 if sa > sb else -1
    if a.free_rank is not None and b.free_rank is not None and a.free_rank != b.free_rank:
        return None
    return 0


def compare_profiles(a: CohomologyProfile, b: CohomologyProfile) -> ComparisonVerdict:
    """
    Degreewise comparison of two profiles over the same degree range.

    Infinite entries are compared by signature (Krull dimension, then
    multiplicity); entries that cannot be compared make the verdict MIXED.

    Raises:
        StructuralError: If the degree ranges differ.
    """
    if a.degrees != b.degrees:
        raise StructuralError(f"profiles over different degrees: {a.degrees} vs {b.degrees}")
    results = [compare_entries(x, y) for x, y in zip(a.entries, b.entries)]
    if any(r is None for r in results):
        return ComparisonVerdict.MIXED
    if all(r == 0 for r in results):
        return ComparisonVerdict.EQUAL
    if all(r >= 0 for r in results):  # type: ignore[operator]
        return ComparisonVerdict.FIRST_DOMINATES
    if all(r <= 0 for r in results):  # type: ignore[operator]
        return ComparisonVerdict.SECOND_DOMINATES
    return ComparisonVerdict.MIXED


def finite_profile(values: List[int], start: int = 0) -> CohomologyProfile:
    """A profile of finite dimensions, e.g. a predicted one."""
    return CohomologyProfile(tuple(CohomologyEntry(start + k, Finite(v)) for k, v in enumerate(values)))
