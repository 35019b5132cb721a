import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from charp_core.exceptions import StructuralError

from charp_sdk.algebra.matrix import PolyMatrix
from charp_sdk.algebra.polynomial import Monomial, PolynomialRing, SparsePolynomial
from charp_sdk.algebra.sampling import monomials_up_to
from charp_sdk.groebner.buchberger import ModuleGroebnerBasis, module_groebner
from charp_sdk.groebner.kernels import kernel_of_map
from charp_sdk.groebner.quotient import module_signature
from charp_sdk.groebner.vectors import FreeModuleVector
from charp_sdk.linalg.fp_matrix import FpMatrix, solve
from charp_sdk.twisted.superpotential import Superpotential

logger = logging.getLogger(__name__)

DEFAULT_RETRACTION_DEGREE = 2
# Ceiling for plans; the linear system has n^2 * C(d + n, n) unknowns.
MAX_RETRACTION_DEGREE = 6


@dataclass
class CriticalLocusAnalysis:
    """
    Z = Crit f = V(∂_1 f, ..., ∂_n f) and the hypotheses of the twisted comparison.

    Attributes:
        jacobian: The generators ∂_i f of J.
        groebner: Reduced Gröbner basis of J.
        empty: J is the unit ideal.
        dimension: dim Z (-1 when empty).
        codimension: n - dim Z, None when empty.
        smooth: Scheme-theoretic smoothness by the Jacobian criterion.
        split: Whether a retraction T_X|_Z → T_Z was found; None when no
            retraction with entries of degree <= 2 exists (undecided).
        retraction: The retraction found, as text.
    """

    jacobian: Tuple[SparsePolynomial, ...]
    groebner: ModuleGroebnerBasis
    empty: bool
    dimension: int
    codimension: Optional[int]
    smooth: bool
    split: Optional[bool]
    retraction: Optional[List[List[str]]] = None
    notes: List[str] = field(default_factory=list)

    @property
    def hypotheses_hold(self) -> bool:
        return self.empty or (self.smooth and self.split is True)

    def to_record(self) -> Dict:
        return {
            "jacobian": [str(g) for g in self.jacobian],
            "groebner": self.groebner.to_text(),
            "empty": self.empty,
            "dimension": self.dimension,
            "codimension": self.codimension,
            "smooth": self.smooth,
            "split": self.split,
            "retraction": self.retraction,
        }


def _normal_form(gb: ModuleGroebnerBasis, g: SparsePolynomial) -> SparsePolynomial:
    return gb.reduce(FreeModuleVector(gb.ring, [g]))[0]


def _hessian(superpotential: Superpotential) -> PolyMatrix:
    partials = superpotential.partials
    n = superpotential.n
    grid = [[partials[j].partial_derivative(i) for j in range(n)] for i in range(n)]
    return PolyMatrix(superpotential.f.ring, grid, n, n)


def tangent_generators(hessian: PolyMatrix, ideal: List[SparsePolynomial]) -> List[Tuple[SparsePolynomial, ...]]:
    """Generators of T_Z = {v : H·v ∈ J^n}, the derivations preserving J."""
    ring, n = hessian.ring, hessian.rows
    if not ideal:
        block = hessian
    else:
        columns = []
        for r in range(n):
            for g in ideal:
                columns.append([g if k == r else ring.zero() for k in range(n)])
        block = hessian.hstack(PolyMatrix.from_columns(ring, columns, n))
    vectors = [v.project(range(n)) for v in kernel_of_map(block)]
    return [tuple(v.components) for v in vectors if not v.is_zero()]


def _linear_system(
    ring: PolynomialRing,
    unknowns: List[Tuple[int, int, Monomial]],
    conditions: List[Tuple[Dict[int, SparsePolynomial], SparsePolynomial]],
    gb: ModuleGroebnerBasis,
) -> Tuple[FpMatrix, List[int]]:
    """
    Rows: the coefficients, monomial by monomial, of Σ_k u_k·c_k ≡ rhs (mod J).

    Each condition maps unknown indices to their polynomial contributions.
    """
    reduced: List[Tuple[Dict[int, SparsePolynomial], SparsePolynomial]] = [
        ({k: _normal_form(gb, c) for k, c in contrib.items()}, _normal_form(gb, rhs)) for contrib, rhs in conditions
    ]
    rows: List[List[int]] = []
    rhs_values: List[int] = []
    for contrib, rhs in reduced:
        support = set(rhs.monomials())
        for c in contrib.values():
            support.update(c.monomials())
        for mono in sorted(support):
            rows.append([contrib[k].coefficient(mono) if k in contrib else 0 for k in range(len(unknowns))])
            rhs_values.append(rhs.coefficient(mono))
    if not rows:
        rows, rhs_values = [[0] * len(unknowns)], [0]
    return FpMatrix(rows, ring.p, (len(rows), len(unknowns))), rhs_values


def find_retraction(
    hessian: PolyMatrix, gb: ModuleGroebnerBasis, max_degree: int = DEFAULT_RETRACTION_DEGREE
) -> Optional[PolyMatrix]:
    """
    A matrix P over O_Z = k[x]/J with P·T_X ⊆ T_Z and P|_{T_Z} = id.

    Entries are searched among polynomials of degree <= d for d = 0, 1, ...,
    max_degree; each degree is a linear system over F_p on normal forms.
    """
    ring, n = hessian.ring, hessian.rows
    ideal = [g[0] for g in gb.generators]
    tangents = tangent_generators(hessian, ideal)
    for degree in range(max_degree + 1):
        monos = monomials_up_to(n, degree)
        unknowns = [(r, s, m) for r in range(n) for s in range(n) for m in monos]
        index = {u: k for k, u in enumerate(unknowns)}
        conditions: List[Tuple[Dict[int, SparsePolynomial], SparsePolynomial]] = []
        # columns of P are tangent to Z
        for s in range(n):
            for t in range(n):
                contrib = {}
                for r in range(n):
                    if hessian[t, r].is_zero():
                        continue
                    for m in monos:
                        contrib[index[(r, s, m)]] = hessian[t, r].mul_term(m)
                conditions.append((contrib, ring.zero()))
        # P restricts to the identity on T_Z
        for v in tangents:
            for r in range(n):
                contrib = {}
                for s in range(n):
                    if v[s].is_zero():
                        continue
                    for m in monos:
                        contrib[index[(r, s, m)]] = v[s].mul_term(m)
                conditions.append((contrib, v[r]))
        matrix, rhs = _linear_system(ring, unknowns, conditions, gb)
        solution = solve(matrix, rhs)
        if solution is None:
            logger.debug(f"No retraction with entries of degree <= {degree}")
            continue
        grid = [[ring.zero() for _ in range(n)] for _ in range(n)]
        for (r, s, m), c in zip(unknowns, solution):
            if c:
                grid[r][s] = grid[r][s] + ring.monomial(m, c)
        return PolyMatrix(ring, [[_normal_form(gb, e) for e in row] for row in grid], n, n)
    return None


def critical_locus(
    superpotential: Superpotential, retraction_degree: int = DEFAULT_RETRACTION_DEGREE
) -> CriticalLocusAnalysis:
    """
    Analyzes Crit f.

    Raises:
        StructuralError: If `retraction_degree` is outside 0..MAX_RETRACTION_DEGREE.

    Smoothness uses the Jacobian criterion: with c = n - dim Z, Z is smooth
    when J together with the c x c minors of the Hessian is the unit ideal.
    This presumes Z equidimensional. The first-order splitting is decided by
    `find_retraction`; failing to find one of low degree leaves it undecided.
    """
    if not 0 <= retraction_degree <= MAX_RETRACTION_DEGREE:
        raise StructuralError(f"retraction degree must be in 0..{MAX_RETRACTION_DEGREE}, got {retraction_degree}")
    ring, n = superpotential.f.ring, superpotential.n
    jacobian = superpotential.partials
    gb = module_groebner([FreeModuleVector(ring, [g]) for g in jacobian], ring=ring, rank=1)
    notes: List[str] = []
    if gb.is_whole_module():
        notes.append("critical locus is empty; every twisted cohomology group vanishes")
        logger.info(f"Crit({superpotential}) is empty")
        return CriticalLocusAnalysis(jacobian, gb, True, -1, None, True, True, None, notes)

    dimension = module_signature(1, gb).krull_dimension
    codimension = n - dimension
    hessian = _hessian(superpotential)
    ideal = [g[0] for g in gb.generators]
    criterion = module_groebner(
        [FreeModuleVector(ring, [g]) for g in ideal + hessian.minors(codimension)], ring=ring, rank=1
    )
    smooth = criterion.is_whole_module()
    split: Optional[bool] = None
    retraction_text = None
    if smooth:
        retraction = find_retraction(hessian, gb, retraction_degree)
        if retraction is not None:
            split = True
            retraction_text = retraction.to_text()
        else:
            notes.append(f"no retraction with entries of degree <= {retraction_degree}; splitting undecided")
    else:
        notes.append("critical locus is not scheme-theoretically smooth")
    logger.info(
        f"Crit({superpotential}): dim {dimension}, codim {codimension}, smooth={smooth}, split={split}"
    )
    return CriticalLocusAnalysis(jacobian, gb, False, dimension, codimension, smooth, split, retraction_text, notes)
