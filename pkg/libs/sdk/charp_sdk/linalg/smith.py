import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from charp_core.exceptions import StructuralError
from charp_core.types import Dimension, Finite, InfiniteOrAbove

from charp_sdk.algebra.field import inverse_mod
from charp_sdk.algebra.matrix import PolyMatrix
from charp_sdk.algebra.polynomial import SparsePolynomial

logger = logging.getLogger(__name__)

Grid = List[List[SparsePolynomial]]


@dataclass(frozen=True)
class SmithDecomposition:
    """
    Smith normal form U·M·V = D of a matrix over k[y].

    Attributes:
        U: Unimodular row transform (rows x rows).
        V: Unimodular column transform (cols x cols).
        D: Diagonal matrix with monic d_0 | d_1 | ... followed by zeros.
        source: The decomposed matrix M.
    """

    U: PolyMatrix
    V: PolyMatrix
    D: PolyMatrix
    source: PolyMatrix

    @property
    def invariant_factors(self) -> List[SparsePolynomial]:
        """Nonzero diagonal entries of D, in order."""
        out = []
        for i in range(min(self.D.rows, self.D.cols)):
            d = self.D[i, i]
            if d.is_zero():
                break
            out.append(d)
        return out

    def cokernel_dimension(self) -> Dimension:
        """
        k-dimension of k[y]^rows / im(M).

        Finite iff every row carries a nonzero invariant factor; the value is
        then the sum of their degrees.
        """
        factors = self.invariant_factors
        if len(factors) < self.D.rows:
            return InfiniteOrAbove(cap=0, lower_bound=0)
        return Finite(sum(d.degree() for d in factors))

    def cokernel_free_rank(self) -> int:
        return self.D.rows - len(self.invariant_factors)

    def kernel_rank(self) -> int:
        return self.D.cols - len(self.invariant_factors)

    def verify(self) -> bool:
        """U·M·V = D and D is diagonal with a divisibility chain."""
        if self.U @ self.source @ self.V != self.D:
            return False
        for i, j, _ in self.D.nonzero_entries():
            if i != j:
                return False
        factors = self.invariant_factors
        for a, b in zip(factors, factors[1:]):
            _, r = b.univariate_divmod(a)
            if not r.is_zero():
                return False
        return True


def _swap_rows(grid: Grid, i: int, j: int) -> None:
    grid[i], grid[j] = grid[j], grid[i]


def _swap_cols(grid: Grid, i: int, j: int) -> None:
    for row in grid:
        row[i], row[j] = row[j], row[i]


def _add_row_multiple(grid: Grid, target: int, source: int, q: SparsePolynomial) -> None:
    """row_target += q * row_source"""
    if q.is_zero():
        return
    src = grid[source]
    grid[target] = [a + q * b if not b.is_zero() else a for a, b in zip(grid[target], src)]


def _add_col_multiple(grid: Grid, target: int, source: int, q: SparsePolynomial) -> None:
    """col_target += q * col_source"""
    if q.is_zero():
        return
    for row in grid:
        if not row[source].is_zero():
            row[target] = row[target] + q * row[source]


def _min_degree_entry(grid: Grid, t: int) -> Optional[Tuple[int, int]]:
    best: Optional[Tuple[int, int]] = None
    best_degree = -1
    for i in range(t, len(grid)):
        for j in range(t, len(grid[i])):
            d = grid[i][j].degree()
            if d >= 0 and (best is None or d < best_degree):
                best, best_degree = (i, j), d
                if d == 0:
                    return best
    return best


def smith_normal_form(m: PolyMatrix) -> SmithDecomposition:
    """
    Computes the Smith normal form of a matrix over a one-variable ring.

    Pivots are chosen by minimal degree; entries in the pivot row and column
    are cleared by Euclidean division, re-pivoting on any nonzero remainder.
    A pivot that fails to divide the remaining block is repaired by adding the
    offending row into the pivot row.

    Raises:
        StructuralError: If the ring has more than one variable.
    """
    ring = m.ring
    if ring.n != 1:
        raise StructuralError(f"Smith normal form needs a one-variable ring, got {ring}")
    rows, cols = m.shape
    a: Grid = m.to_lists()
    u: Grid = PolyMatrix.identity(ring, rows).to_lists()
    # V is tracked transposed so column operations become row operations.
    vt: Grid = PolyMatrix.identity(ring, cols).to_lists()

    for t in range(min(rows, cols)):
        while True:
            pos = _min_degree_entry(a, t)
            if pos is None:
                break
            i, j = pos
            if i != t:
                _swap_rows(a, i, t)
                _swap_rows(u, i, t)
            if j != t:
                _swap_cols(a, j, t)
                _swap_rows(vt, j, t)
            pivot = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t].is_zero():
                    continue
                q, r = a[i][t].univariate_divmod(pivot)
                _add_row_multiple(a, i, t, -q)
                _add_row_multiple(u, i, t, -q)
                dirty = dirty or not r.is_zero()
            for j in range(t + 1, cols):
                if a[t][j].is_zero():
                    continue
                q, r = a[t][j].univariate_divmod(pivot)
                _add_col_multiple(a, j, t, -q)
                _add_row_multiple(vt, j, t, -q)
                dirty = dirty or not r.is_zero()
            if dirty:
                continue
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j].is_zero():
                        continue
                    _, r = a[i][j].univariate_divmod(pivot)
                    if not r.is_zero():
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            _add_row_multiple(a, t, offender, ring.one())
            _add_row_multiple(u, t, offender, ring.one())
        if a[t][t].is_zero():
            break
        inv = inverse_mod(a[t][t].leading_coefficient(), ring.p)
        if inv != 1:
            a[t] = [e.scale(inv) for e in a[t]]
            u[t] = [e.scale(inv) for e in u[t]]

    d = PolyMatrix(ring, a, rows, cols)
    U = PolyMatrix(ring, u, rows, rows)
    V = PolyMatrix(ring, vt, cols, cols).transpose()
    logger.debug(f"Smith form of {rows}x{cols} matrix: {[str(a[i][i]) for i in range(min(rows, cols))]}")
    return SmithDecomposition(U=U, V=V, D=d, source=m)
