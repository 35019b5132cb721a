from itertools import combinations
from typing import Callable, List, Optional, Sequence, Tuple

from charp_core.exceptions import StructuralError

from charp_sdk.algebra.polynomial import PolynomialRing, SparsePolynomial


class PolyMatrix:
    """
    An immutable matrix of polynomials over one ring.

    Represents an O-linear map between free modules: column j is the image of
    the j-th basis vector of the source. Zero-extent matrices are allowed and
    describe maps from or to the zero module.
    """

    __slots__ = ("ring", "rows", "cols", "_entries")

    def __init__(
        self,
        ring: PolynomialRing,
        entries: Sequence[Sequence[SparsePolynomial]],
        rows: Optional[int] = None,
        cols: Optional[int] = None,
    ):
        grid = tuple(tuple(row) for row in entries)
        self.rows = len(grid) if rows is None else rows
        if cols is None:
            cols = len(grid[0]) if grid else 0
        self.cols = cols
        if len(grid) != self.rows:
            raise StructuralError(f"expected {self.rows} rows, got {len(grid)}")
        for r in grid:
            if len(r) != self.cols:
                raise StructuralError(f"ragged matrix: row of length {len(r)}, expected {self.cols}")
            for entry in r:
                if entry.ring != ring:
                    raise StructuralError(f"matrix entry in {entry.ring}, expected {ring}")
        self.ring = ring
        self._entries = grid

    # --- Constructors ---

    @classmethod
    def zero(cls, ring: PolynomialRing, rows: int, cols: int) -> "PolyMatrix":
        z = ring.zero()
        return cls(ring, [[z] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, ring: PolynomialRing, size: int) -> "PolyMatrix":
        one, z = ring.one(), ring.zero()
        return cls(ring, [[one if i == j else z for j in range(size)] for i in range(size)], size, size)

    @classmethod
    def from_columns(
        cls, ring: PolynomialRing, columns: Sequence[Sequence[SparsePolynomial]], rows: int
    ) -> "PolyMatrix":
        for col in columns:
            if len(col) != rows:
                raise StructuralError(f"column of length {len(col)}, expected {rows}")
        return cls(ring, [[col[i] for col in columns] for i in range(rows)], rows, len(columns))

    @classmethod
    def from_text(cls, ring: PolynomialRing, rows: Sequence[Sequence[str]]) -> "PolyMatrix":
        grid = [[ring.parse(str(cell)) for cell in row] for row in rows]
        return cls(ring, grid, len(grid), len(grid[0]) if grid else 0)

    @classmethod
    def diagonal(cls, ring: PolynomialRing, entries: Sequence[SparsePolynomial]) -> "PolyMatrix":
        n = len(entries)
        z = ring.zero()
        return cls(ring, [[entries[i] if i == j else z for j in range(n)] for i in range(n)], n, n)

    # --- Access ---

    def __getitem__(self, index: Tuple[int, int]) -> SparsePolynomial:
        i, j = index
        return self._entries[i][j]

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def row(self, i: int) -> Tuple[SparsePolynomial, ...]:
        return self._entries[i]

    def column(self, j: int) -> Tuple[SparsePolynomial, ...]:
        return tuple(self._entries[i][j] for i in range(self.rows))

    def columns(self) -> List[Tuple[SparsePolynomial, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self) -> List[List[SparsePolynomial]]:
        return [list(r) for r in self._entries]

    def to_text(self) -> List[List[str]]:
        return [[str(e) for e in r] for r in self._entries]

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self._entries for e in r)

    def nonzero_entries(self) -> List[Tuple[int, int, SparsePolynomial]]:
        return [
            (i, j, e) for i, r in enumerate(self._entries) for j, e in enumerate(r) if not e.is_zero()
        ]

    # --- Algebra ---

    def _check_same(self, other: "PolyMatrix") -> None:
        if other.ring != self.ring:
            raise StructuralError(f"ring mismatch: {self.ring} vs {other.ring}")
        if other.shape != self.shape:
            raise StructuralError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_same(other)
        return PolyMatrix(
            self.ring,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._entries, other._entries)],
            self.rows,
            self.cols,
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_same(other)
        return PolyMatrix(
            self.ring,
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self._entries, other._entries)],
            self.rows,
            self.cols,
        )

    def __neg__(self) -> "PolyMatrix":
        return self.map_entries(lambda e: -e)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if other.ring != self.ring:
            raise StructuralError(f"ring mismatch: {self.ring} vs {other.ring}")
        if self.cols != other.rows:
            raise StructuralError(f"cannot compose {self.shape} with {other.shape}")
        zero = self.ring.zero()
        out = []
        other_cols = [other.column(j) for j in range(other.cols)]
        for r in self._entries:
            nz = [(k, a) for k, a in enumerate(r) if not a.is_zero()]
            row = []
            for col in other_cols:
                acc = zero
                for k, a in nz:
                    b = col[k]
                    if not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ring, out, self.rows, other.cols)

    def apply(self, vector: Sequence[SparsePolynomial]) -> Tuple[SparsePolynomial, ...]:
        if len(vector) != self.cols:
            raise StructuralError(f"vector of length {len(vector)} for a map with {self.cols} columns")
        zero = self.ring.zero()
        result = []
        for r in self._entries:
            acc = zero
            for a, v in zip(r, vector):
                if not a.is_zero() and not v.is_zero():
                    acc = acc + a * v
            result.append(acc)
        return tuple(result)

    def scale(self, c: SparsePolynomial) -> "PolyMatrix":
        return self.map_entries(lambda e: e * c)

    def map_entries(
        self, fn: Callable[[SparsePolynomial], SparsePolynomial], ring: Optional[PolynomialRing] = None
    ) -> "PolyMatrix":
        return PolyMatrix(ring or self.ring, [[fn(e) for e in r] for r in self._entries], self.rows, self.cols)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, [self.column(j) for j in range(self.cols)], self.cols, self.rows)

    def hstack(self, *others: "PolyMatrix") -> "PolyMatrix":
        rows = [list(r) for r in self._entries]
        cols = self.cols
        for other in others:
            if other.ring != self.ring or other.rows != self.rows:
                raise StructuralError(f"cannot place {other.shape} beside {self.shape}")
            for i in range(self.rows):
                rows[i].extend(other._entries[i])
            cols += other.cols
        return PolyMatrix(self.ring, rows, self.rows, cols)

    def vstack(self, *others: "PolyMatrix") -> "PolyMatrix":
        rows = [list(r) for r in self._entries]
        for other in others:
            if other.ring != self.ring or other.cols != self.cols:
                raise StructuralError(f"cannot place {other.shape} below {self.shape}")
            rows.extend(list(r) for r in other._entries)
        return PolyMatrix(self.ring, rows, len(rows), self.cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(
            self.ring, [[self._entries[i][j] for j in cols] for i in rows], len(rows), len(cols)
        )

    def determinant(self) -> SparsePolynomial:
        """Laplace expansion along the sparsest row; intended for small matrices."""
        if self.rows != self.cols:
            raise StructuralError(f"determinant of non-square {self.shape} matrix")
        return _laplace(self._entries, list(range(self.rows)), list(range(self.cols)), self.ring)

    def minors(self, size: int) -> List[SparsePolynomial]:
        out = []
        for rs in combinations(range(self.rows), size):
            for cs in combinations(range(self.cols), size):
                out.append(_laplace(self._entries, list(rs), list(cs), self.ring))
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.ring, self.shape, self._entries))

    def __str__(self) -> str:
        text = self.to_text()
        if not text:
            return f"[] ({self.rows}x{self.cols})"
        width = max((len(c) for r in text for c in r), default=1)
        return "\n".join("[" + ", ".join(c.rjust(width) for c in r) + "]" for r in text)

    def __repr__(self) -> str:
        return f"PolyMatrix({self.rows}x{self.cols} over {self.ring})"


def _laplace(
    entries: Tuple[Tuple[SparsePolynomial, ...], ...],
    rows: List[int],
    cols: List[int],
    ring: PolynomialRing,
) -> SparsePolynomial:
    if not rows:
        return ring.one()
    if len(rows) == 1:
        return entries[rows[0]][cols[0]]
    pivot_pos = min(
        range(len(rows)), key=lambda k: sum(1 for c in cols if not entries[rows[k]][c].is_zero())
    )
    r = rows[pivot_pos]
    rest = rows[:pivot_pos] + rows[pivot_pos + 1 :]
    total = ring.zero()
    for k, c in enumerate(cols):
        a = entries[r][c]
        if a.is_zero():
            continue
        minor = _laplace(entries, rest, cols[:k] + cols[k + 1 :], ring)
        term = a * minor
        total = total + (term if (pivot_pos + k) % 2 == 0 else -term)
    return total
