import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
from charp_core.exceptions import StructuralError
from charp_core.types import ExperimentOutcome

from charp_sdk.algebra.matrix import PolyMatrix
from charp_sdk.algebra.polynomial import SparsePolynomial
from charp_sdk.frobenius.structure import FrobeniusStructure
from charp_sdk.linalg.fp_matrix import FpMatrix, RowReducer

logger = logging.getLogger(__name__)

MAX_SPLITTING_RANK = 27


@dataclass
class SplittingModule:
    """
    D_X acting on F_*O_X (or on F_*L for L = ψ_* O_X) by p^n x p^n matrices over k[y].

    Attributes:
        structure: The Frobenius dictionary; matrix rows and columns follow its basis.
        superpotential: The twist f (zero for O_X itself).
        multiplications: X_i, multiplication by x_i.
        derivations: P_i, the action of ∂_i − ∂_i(f).
        fibre_dimension: k-dimension of the algebra generated by all X_i, P_i at y = 0.
    """

    structure: FrobeniusStructure
    superpotential: SparsePolynomial
    multiplications: Tuple[PolyMatrix, ...]
    derivations: Tuple[PolyMatrix, ...]
    fibre_dimension: int
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return self.structure.size

    def outcome(self) -> ExperimentOutcome:
        return ExperimentOutcome(
            checks=dict(self.checks),
            tables={
                "rank": self.rank,
                "fibre_dimension": self.fibre_dimension,
                "expected_fibre_dimension": self.rank**2,
            },
            witnesses={
                "multiplications": [m.to_text() for m in self.multiplications],
                "derivations": [m.to_text() for m in self.derivations],
            },
        )


def _operator_matrix(fs: FrobeniusStructure, images: List[SparsePolynomial]) -> PolyMatrix:
    return PolyMatrix.from_columns(fs.y_ring, [fs.pushforward(g) for g in images], fs.size)


def _power(m: PolyMatrix, e: int) -> PolyMatrix:
    out = PolyMatrix.identity(m.ring, m.rows)
    for _ in range(e):
        out = out @ m
    return out


def _fibre_at_origin(m: PolyMatrix, p: int) -> FpMatrix:
    origin = [0] * m.ring.n
    return FpMatrix([[e.evaluate(origin) for e in row] for row in m.to_lists()], p)


def generated_algebra_dimension(generators: List[FpMatrix]) -> int:
    """k-dimension of the unital algebra generated by square F_p matrices."""
    size, p = generators[0].rows, generators[0].p
    reducer = RowReducer(np.eye(size, dtype=np.int64).reshape(1, -1), size * size, p)
    while True:
        basis = [FpMatrix(row, p, (size, size)) for row in reducer.basis]
        words = [(b @ g).data.reshape(-1) for b in basis for g in generators]
        grown = RowReducer(np.vstack([reducer.basis] + words), size * size, p)
        if grown.rank == reducer.rank:
            return reducer.rank
        reducer = grown


def splitting_module(n: int, p: int, f: Optional[SparsePolynomial] = None) -> SplittingModule:
    """
    Matrices of x_i and ∂_i − ∂_i(f) on F_*O_X with the checks they satisfy.

    The commutation relations of the Weyl algebra hold, X_i^p = y_i and
    P_i^p = −∂f′/∂y_i as scalars, and the fibre at y = 0 of the algebra they
    generate is the full matrix algebra of dimension p^{2n}.

    Raises:
        StructuralError: When p^n exceeds 27.
    """
    fs = FrobeniusStructure(n, p)
    if fs.size > MAX_SPLITTING_RANK:
        raise StructuralError(f"splitting module of rank {fs.size} = {p}^{n} exceeds {MAX_SPLITTING_RANK}")
    x = fs.x_ring
    f = x.zero() if f is None else f.rename(x)
    basis = [x.monomial(a) for a in fs.basis]
    X = tuple(_operator_matrix(fs, [x.var(i) * b for b in basis]) for i in range(n))
    P = tuple(
        _operator_matrix(fs, [b.partial_derivative(i) - b * f.partial_derivative(i) for b in basis]) for i in range(n)
    )
    y = fs.y_ring
    identity = PolyMatrix.identity(y, fs.size)
    zero = PolyMatrix.zero(y, fs.size, fs.size)
    f_twisted = f.p_power_substitute(y)

    checks: Dict[str, bool] = {}
    for i in range(n):
        for j in range(n):
            bracket = P[i] @ X[j] - X[j] @ P[i]
            checks[f"bracket_P{i}_X{j}"] = bracket == (identity if i == j else zero)
            if i < j:
                checks[f"commute_X{i}_X{j}"] = X[i] @ X[j] == X[j] @ X[i]
                checks[f"commute_P{i}_P{j}"] = P[i] @ P[j] == P[j] @ P[i]
        checks[f"X{i}_pth_power"] = _power(X[i], p) == identity.scale(y.var(i))
        checks[f"P{i}_pth_power"] = _power(P[i], p) == identity.scale(-f_twisted.partial_derivative(i))

    fibre = generated_algebra_dimension([_fibre_at_origin(m, p) for m in X + P])
    checks["fibre_is_full_matrix_algebra"] = fibre == fs.size**2
    logger.info(f"Splitting module of rank {fs.size} over F_{p} (f = {f}): fibre dimension {fibre}")
    return SplittingModule(fs, f, X, P, fibre, checks)
