import logging
from typing import List, Sequence

from charp_core.exceptions import StructuralError

from charp_sdk.algebra.matrix import PolyMatrix
from charp_sdk.algebra.polynomial import PolynomialRing
from charp_sdk.groebner.buchberger import ModuleGroebnerBasis, module_groebner
from charp_sdk.groebner.vectors import FreeModuleVector, ModuleOrder

logger = logging.getLogger(__name__)


def columns_as_vectors(m: PolyMatrix) -> List[FreeModuleVector]:
    return [FreeModuleVector(m.ring, col) for col in m.columns()]


def vectors_as_matrix(ring: PolynomialRing, rank: int, vectors: Sequence[FreeModuleVector]) -> PolyMatrix:
    """The rank x len(vectors) matrix whose columns are `vectors`."""
    for v in vectors:
        if v.rank != rank:
            raise StructuralError(f"vector of rank {v.rank}, expected {rank}")
    return PolyMatrix.from_columns(ring, [v.components for v in vectors], rank)


def image_groebner(m: PolyMatrix, order: ModuleOrder = ModuleOrder.POT) -> ModuleGroebnerBasis:
    """Gröbner basis of the column span of `m` inside R^rows."""
    return module_groebner(columns_as_vectors(m), order, ring=m.ring, rank=m.rows)


def kernel_of_map(m: PolyMatrix) -> List[FreeModuleVector]:
    """
    Generators of {v : m·v = 0}.

    Each column c_j is stacked over the basis vector e_j in R^{rows+cols}.
    Under position-over-term order with the image block first, the Gröbner
    elements whose leading position falls in the identity block vanish on
    the image block; their identity parts generate the kernel.
    """
    ring = m.ring
    s, t = m.shape
    if t == 0:
        return []
    if s == 0:
        return [FreeModuleVector.basis_vector(ring, t, j) for j in range(t)]
    zero, one = ring.zero(), ring.one()
    augmented = []
    for j, col in enumerate(m.columns()):
        tail = [one if k == j else zero for k in range(t)]
        augmented.append(FreeModuleVector(ring, list(col) + tail))
    gb = module_groebner(augmented, ModuleOrder.POT, ring=ring, rank=s + t)
    kernel = []
    for g, (pos, _) in zip(gb.generators, gb.leading_terms()):
        if pos >= s:
            kernel.append(g.project(range(s, s + t)))
    logger.debug(f"Kernel of {s}x{t} map: {len(kernel)} generators")
    return kernel


def syzygies(vectors: Sequence[FreeModuleVector], ring: PolynomialRing, rank: int) -> List[FreeModuleVector]:
    """Relations among `vectors`: the kernel of the matrix with those columns."""
    return kernel_of_map(vectors_as_matrix(ring, rank, vectors))
