import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from charp_core.exceptions import InternalInconsistencyError, StructuralError

from charp_sdk.algebra.field import validate_prime

logger = logging.getLogger(__name__)

ArrayLike = Union[np.ndarray, Sequence[Sequence[int]]]


class FpMatrix:
    """
    A dense matrix over F_p backed by an int64 numpy array.

    Entries are residues in [0, p). With p <= 97 every product of two entries
    and every length-10^4 dot product stays far below the int64 range, so
    reductions are exact.
    """

    __slots__ = ("p", "_data")

    def __init__(self, data: ArrayLike, p: int, shape: Optional[Tuple[int, int]] = None):
        validate_prime(p)
        arr = np.array(data, dtype=np.int64)
        if shape is not None:
            arr = arr.reshape(shape)
        if arr.ndim != 2:
            raise StructuralError(f"FpMatrix needs a 2-dimensional array, got shape {arr.shape}")
        arr %= p
        arr.setflags(write=False)
        self.p = p
        self._data = arr

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "FpMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @classmethod
    def identity(cls, size: int, p: int) -> "FpMatrix":
        return cls(np.eye(size, dtype=np.int64), p)

    @classmethod
    def hstack(cls, blocks: Sequence["FpMatrix"]) -> "FpMatrix":
        _check_moduli(blocks)
        return cls(np.hstack([b._data for b in blocks]), blocks[0].p)

    @classmethod
    def vstack(cls, blocks: Sequence["FpMatrix"]) -> "FpMatrix":
        _check_moduli(blocks)
        return cls(np.vstack([b._data for b in blocks]), blocks[0].p)

    @property
    def data(self) -> np.ndarray:
        """Read-only view of the residues."""
        return self._data

    @property
    def shape(self) -> Tuple[int, int]:
        return (int(self._data.shape[0]), int(self._data.shape[1]))

    @property
    def rows(self) -> int:
        return self.shape[0]

    @property
    def cols(self) -> int:
        return self.shape[1]

    def _check(self, other: "FpMatrix") -> None:
        if other.p != self.p:
            raise StructuralError(f"modulus mismatch: {self.p} vs {other.p}")

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise StructuralError(f"cannot multiply {self.shape} by {other.shape}")
        return FpMatrix(self._data @ other._data, self.p)

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        self._check(other)
        return FpMatrix(self._data + other._data, self.p)

    def __sub__(self, other: "FpMatrix") -> "FpMatrix":
        self._check(other)
        return FpMatrix(self._data - other._data, self.p)

    def scale(self, c: int) -> "FpMatrix":
        return FpMatrix(self._data * (c % self.p), self.p)

    def transpose(self) -> "FpMatrix":
        return FpMatrix(self._data.T, self.p)

    def is_zero(self) -> bool:
        return not self._data.any()

    def rank(self) -> int:
        return rref(self).rank

    def to_lists(self) -> List[List[int]]:
        return self._data.tolist()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and bool(np.array_equal(self._data, other._data))

    def __hash__(self) -> int:
        return hash((self.p, self.shape, self._data.tobytes()))

    def __repr__(self) -> str:
        return f"FpMatrix({self.rows}x{self.cols}, p={self.p})"


def _as_rows(vectors: ArrayLike, width: int) -> np.ndarray:
    arr = np.array(vectors, dtype=np.int64)
    if arr.size == 0:
        return np.zeros((arr.shape[0] if arr.ndim == 2 else 0, width), dtype=np.int64)
    return arr.reshape(-1, width)


def _check_moduli(blocks: Sequence[FpMatrix]) -> None:
    if not blocks:
        raise StructuralError("cannot stack an empty list of blocks")
    if len({b.p for b in blocks}) != 1:
        raise StructuralError("cannot stack blocks of different moduli")


@dataclass(frozen=True)
class RREFResult:
    """
    Row-reduced echelon data of a matrix.

    Attributes:
        reduced: The reduced row echelon form (same shape as the input).
        rank: Number of pivots.
        pivots: Pivot column of each nonzero row, increasing.
        kernel: Basis of the right null space {v : M v = 0}, one vector per free column.
    """

    reduced: FpMatrix
    rank: int
    pivots: Tuple[int, ...]
    kernel: Tuple[Tuple[int, ...], ...]


def _eliminate(a: np.ndarray, p: int, column_limit: Optional[int] = None) -> Tuple[np.ndarray, List[int]]:
    """In-place Gauss-Jordan elimination; pivots are searched in the first `column_limit` columns."""
    rows, cols = a.shape
    limit = cols if column_limit is None else column_limit
    pivots: List[int] = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        if inv != 1:
            a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: FpMatrix) -> RREFResult:
    """Exact row-reduced echelon form, rank and null-space basis."""
    a = np.array(m.data, dtype=np.int64, copy=True)
    p = m.p
    a, pivots = _eliminate(a, p)
    rank = len(pivots)
    cols = m.cols
    pivot_set = set(pivots)
    kernel = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = np.zeros(cols, dtype=np.int64)
        v[free] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-a[i, free]) % p
        kernel.append(tuple(int(x) for x in v))
    logger.debug(f"rref of {m.shape} matrix mod {p}: rank {rank}")
    return RREFResult(FpMatrix(a, p), rank, tuple(pivots), tuple(kernel))


def solve(m: FpMatrix, b: Sequence[int]) -> Optional[Tuple[int, ...]]:
    """
    One solution x of m x = b, or None when the system is inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    rhs = np.array(b, dtype=np.int64).reshape(-1, 1)
    if rhs.shape[0] != m.rows:
        raise StructuralError(f"right-hand side of length {rhs.shape[0]} for {m.rows} equations")
    aug = np.hstack([np.array(m.data, dtype=np.int64), rhs]) % m.p
    aug, pivots = _eliminate(aug, m.p, column_limit=m.cols)
    rank = len(pivots)
    if aug[rank:, -1].any():
        return None
    x = np.zeros(m.cols, dtype=np.int64)
    for i, pc in enumerate(pivots):
        x[pc] = aug[i, -1]
    return tuple(int(v) for v in x)


class RowReducer:
    """
    Normal forms of row vectors modulo the row space of a spanning matrix.

    The row space is stored in reduced echelon form. Reducing a vector zeroes
    its pivot coordinates, which gives canonical coset representatives; the
    remaining (free) coordinates are coordinates on the quotient space.
    """

    def __init__(self, spanning_rows: np.ndarray, ambient: int, p: int):
        self.p = p
        self.ambient = ambient
        rows = _as_rows(spanning_rows, ambient) % p
        reduced, pivots = _eliminate(rows, p)
        self.basis = reduced[: len(pivots)]
        self.pivots = np.array(pivots, dtype=np.int64)
        pivot_set = set(pivots)
        self.free = np.array([c for c in range(ambient) if c not in pivot_set], dtype=np.int64)

    @property
    def rank(self) -> int:
        return int(self.basis.shape[0])

    @property
    def quotient_dimension(self) -> int:
        return int(self.free.size)

    def reduce(self, vectors: np.ndarray) -> np.ndarray:
        v = _as_rows(vectors, self.ambient) % self.p
        if self.rank == 0 or v.shape[0] == 0:
            return v
        return (v - v[:, self.pivots] @ self.basis) % self.p

    def quotient_coordinates(self, vectors: np.ndarray) -> np.ndarray:
        """Coordinates of the cosets of `vectors` on the free columns."""
        return self.reduce(vectors)[:, self.free]

    def lift_quotient(self, coordinates: np.ndarray) -> np.ndarray:
        """Canonical representatives in the ambient space for quotient coordinates."""
        c = _as_rows(coordinates, self.quotient_dimension)
        out = np.zeros((c.shape[0], self.ambient), dtype=np.int64)
        out[:, self.free] = c % self.p
        return out

    def coordinates(self, vectors: np.ndarray) -> np.ndarray:
        """
        Coefficients expressing vectors of the row space in the reduced basis.

        Raises:
            InternalInconsistencyError: If some vector lies outside the row space.
        """
        v = _as_rows(vectors, self.ambient) % self.p
        if self.rank == 0:
            if v.any():
                raise InternalInconsistencyError("vector outside the zero subspace")
            return np.zeros((v.shape[0], 0), dtype=np.int64)
        coeffs = v[:, self.pivots]
        if ((coeffs @ self.basis - v) % self.p).any():
            raise InternalInconsistencyError("vector outside the expected subspace")
        return coeffs

    def contains(self, vectors: np.ndarray) -> bool:
        return not self.reduce(vectors).any()
