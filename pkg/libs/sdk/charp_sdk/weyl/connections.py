import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from charp_core.exceptions import NonFlatError, StructuralError

from charp_sdk.algebra.matrix import PolyMatrix
from charp_sdk.algebra.polynomial import PolynomialRing, SparsePolynomial
from charp_sdk.weyl.vector_fields import VectorField, restricted_power

logger = logging.getLogger(__name__)

Section = Tuple[SparsePolynomial, ...]


@dataclass(frozen=True)
class Connection:
    """
    A connection ∇_{∂_i} = ∂_i + A_i on the free module O^rank.

    Flatness ∂_i(A_j) − ∂_j(A_i) + [A_i, A_j] = 0 is checked at construction.
    """

    ring: PolynomialRing
    rank: int
    matrices: Tuple[PolyMatrix, ...]

    def __post_init__(self) -> None:
        if len(self.matrices) != self.ring.n:
            raise StructuralError(f"a connection on {self.ring} needs {self.ring.n} matrices, got {len(self.matrices)}")
        for a in self.matrices:
            if a.ring != self.ring or a.shape != (self.rank, self.rank):
                raise StructuralError(
                    f"connection matrix {a.shape} over {a.ring} for rank {self.rank} over {self.ring}"
                )
        for i in range(self.ring.n):
            for j in range(i + 1, self.ring.n):
                ai, aj = self.matrices[i], self.matrices[j]
                curvature = (
                    aj.map_entries(lambda e, i=i: e.partial_derivative(i))
                    - ai.map_entries(lambda e, j=j: e.partial_derivative(j))
                    + (ai @ aj - aj @ ai)
                )
                if not curvature.is_zero():
                    raise NonFlatError(f"connection is not flat: curvature in (d{i}, d{j}) is\n{curvature}")

    @classmethod
    def trivial(cls, ring: PolynomialRing, rank: int = 1) -> "Connection":
        return cls(ring, rank, tuple(PolyMatrix.zero(ring, rank, rank) for _ in range(ring.n)))

    @classmethod
    def for_superpotential(cls, f: SparsePolynomial) -> "Connection":
        """L = ψ_* O_X: the rank-one connection ∂_i − ∂_i(f)."""
        ring = f.ring
        return cls(ring, 1, tuple(PolyMatrix(ring, [[-f.partial_derivative(i)]], 1, 1) for i in range(ring.n)))

    def covariant_derivative(self, i: int, s: Sequence[SparsePolynomial]) -> Section:
        """∇_{∂_i}(s) = ∂_i s + A_i s"""
        twist = self.matrices[i].apply(s)
        return tuple(si.partial_derivative(i) + ti for si, ti in zip(s, twist))

    def along(self, theta: VectorField, s: Sequence[SparsePolynomial]) -> Section:
        """∇_θ(s) = Σ g_i ∇_{∂_i}(s)"""
        if theta.ring != self.ring:
            raise StructuralError(f"vector field on {theta.ring} for a connection on {self.ring}")
        out: List[SparsePolynomial] = [self.ring.zero()] * self.rank
        for i, g in enumerate(theta.coefficients):
            if g.is_zero():
                continue
            di = self.covariant_derivative(i, s)
            out = [o + g * d for o, d in zip(out, di)]
        return tuple(out)


def p_curvature_apply(connection: Connection, theta: VectorField, s: Sequence[SparsePolynomial]) -> Section:
    """(∇_θ^p − ∇_{θ^[p]})(s)"""
    value: Section = tuple(s)
    for _ in range(connection.ring.p):
        value = connection.along(theta, value)
    correction = connection.along(restricted_power(theta), s)
    return tuple(a - b for a, b in zip(value, correction))


def p_curvature(connection: Connection, theta: VectorField) -> PolyMatrix:
    """
    The p-curvature ∇_θ^p − ∇_{θ^[p]} as an O-linear endomorphism.

    Column j is the image of the basis section e_j.
    """
    ring = connection.ring
    columns = []
    for j in range(connection.rank):
        e = tuple(ring.one() if k == j else ring.zero() for k in range(connection.rank))
        columns.append(p_curvature_apply(connection, theta, e))
    result = PolyMatrix.from_columns(ring, columns, connection.rank)
    logger.debug(f"p-curvature along {theta}: {result.to_text()}")
    return result
