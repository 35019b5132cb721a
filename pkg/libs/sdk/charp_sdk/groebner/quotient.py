import logging
from dataclasses import dataclass
from itertools import combinations, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from charp_core.exceptions import StructuralError
from charp_core.types import Dimension, Finite, InfiniteOrAbove, Record

from charp_sdk.algebra.polynomial import Monomial, monomial_divides
from charp_sdk.groebner.buchberger import ModuleGroebnerBasis, module_groebner
from charp_sdk.groebner.vectors import ModuleOrder

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModuleSignature:
    """
    Krull dimension and multiplicity of a finitely generated quotient module.

    A finite-dimensional nonzero quotient has dimension 0 and multiplicity
    equal to its k-dimension; the zero module has dimension -1.
    """

    krull_dimension: int
    multiplicity: int

    def to_record(self) -> Record:
        return {"krull_dimension": self.krull_dimension, "multiplicity": self.multiplicity}

    @classmethod
    def from_record(cls, record: Record) -> "ModuleSignature":
        return cls(int(record["krull_dimension"]), int(record["multiplicity"]))


def _check_rank(rank: int, sub: ModuleGroebnerBasis) -> None:
    if sub.rank != rank:
        raise StructuralError(f"submodule of rank {sub.rank} used as a submodule of rank {rank}")


def _leading_by_position(rank: int, sub: ModuleGroebnerBasis) -> List[List[Monomial]]:
    out: List[List[Monomial]] = [[] for _ in range(rank)]
    for pos, mono in sub.leading_terms():
        out[pos].append(mono)
    return out


def _pure_power_bounds(monos: Sequence[Monomial], n: int) -> List[Optional[int]]:
    """Smallest k with x_i^k among `monos`, per variable (None if absent)."""
    bounds: List[Optional[int]] = [None] * n
    for mono in monos:
        support = [i for i, e in enumerate(mono) if e]
        if len(support) == 1:
            i = support[0]
            if bounds[i] is None or mono[i] < bounds[i]:
                bounds[i] = mono[i]
    return bounds


def _is_unit(monos: Sequence[Monomial]) -> bool:
    return any(sum(m) == 0 for m in monos)


def _standard(mono: Monomial, leading: Sequence[Monomial]) -> bool:
    return not any(monomial_divides(lm, mono) for lm in leading)


def _count_box(leading: Sequence[Monomial], bounds: Sequence[int]) -> int:
    return sum(1 for m in product(*(range(b) for b in bounds)) if _standard(m, leading))


def _monomials_of_degree(n: int, d: int) -> Iterator[Monomial]:
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _monomials_of_degree(n - 1, d - first):
            yield (first,) + rest


def is_finite_quotient(rank: int, sub: ModuleGroebnerBasis) -> bool:
    """
    Finiteness of R^rank / sub, read off the leading terms.

    The quotient is finite iff at every position either the leading
    monomials contain 1 or every variable has a pure power among them.
    """
    _check_rank(rank, sub)
    n = sub.ring.n
    for monos in _leading_by_position(rank, sub):
        if _is_unit(monos):
            continue
        if any(b is None for b in _pure_power_bounds(monos, n)):
            return False
    return True


def quotient_k_dimension(rank: int, sub: ModuleGroebnerBasis, degree_cap: int = 40) -> Dimension:
    """
    k-dimension of R^rank / sub by counting standard monomials.

    Finiteness is decided from the leading terms. In the finite case the
    count is exact and independent of `degree_cap`; otherwise the number of
    standard monomials of degree at most `degree_cap` is returned as a lower
    bound.
    """
    _check_rank(rank, sub)
    n = sub.ring.n
    per_position = _leading_by_position(rank, sub)
    if is_finite_quotient(rank, sub):
        total = 0
        for monos in per_position:
            if _is_unit(monos):
                continue
            bounds = _pure_power_bounds(monos, n)
            total += _count_box(monos, [b for b in bounds if b is not None] if n else [])
        return Finite(total)
    lower = sum(hilbert_prefix(rank, sub, degree_cap))
    logger.debug(f"Quotient of rank {rank} is infinite; {lower} standard monomials up to degree {degree_cap}")
    return InfiniteOrAbove(cap=degree_cap, lower_bound=lower)


def standard_basis(rank: int, sub: ModuleGroebnerBasis) -> List[Tuple[int, Monomial]]:
    """
    The (position, monomial) pairs outside the leading-term module.

    Raises:
        StructuralError: If the quotient is infinite-dimensional.
    """
    if not is_finite_quotient(rank, sub):
        raise StructuralError("standard basis requested for an infinite-dimensional quotient")
    n = sub.ring.n
    out = []
    for pos, monos in enumerate(_leading_by_position(rank, sub)):
        if _is_unit(monos):
            continue
        bounds = _pure_power_bounds(monos, n)
        for m in product(*(range(b) for b in bounds if b is not None)):
            if _standard(m, monos):
                out.append((pos, m))
    return out


def hilbert_prefix(rank: int, sub: ModuleGroebnerBasis, upto: int) -> List[int]:
    """
    Number of standard monomials in each total degree 0..upto.

    For a degree-compatible (TOP) basis this is the Hilbert function of the
    associated graded quotient.
    """
    _check_rank(rank, sub)
    n = sub.ring.n
    counts = [0] * (upto + 1)
    for monos in _leading_by_position(rank, sub):
        if _is_unit(monos):
            continue
        for d in range(upto + 1):
            counts[d] += sum(1 for m in _monomials_of_degree(n, d) if _standard(m, monos))
    return counts


def _position_signature(monos: Sequence[Monomial], n: int) -> Tuple[int, int]:
    if _is_unit(monos):
        return (-1, 0)
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in monos]
    for size in range(n, -1, -1):
        free_sets = [
            set(s) for s in combinations(range(n), size) if not any(sup <= set(s) for sup in supports)
        ]
        if not free_sets:
            continue
        multiplicity = 0
        for s in free_sets:
            rest = [i for i in range(n) if i not in s]
            restricted = [tuple(m[i] for i in rest) for m in monos]
            bounds = _pure_power_bounds(restricted, len(rest))
            multiplicity += _count_box(restricted, [b for b in bounds if b is not None])
        return (size, multiplicity)
    return (-1, 0)


def module_signature(rank: int, sub: ModuleGroebnerBasis) -> ModuleSignature:
    """
    (Krull dimension, multiplicity) of R^rank / sub.

    Computed on the leading-term module of a term-over-position basis, which
    has the same Hilbert polynomial as the quotient. Each position contributes
    a monomial quotient k[x]/I; its dimension is the largest set S of
    variables with no generator of I supported inside S, and its multiplicity
    sums, over those maximal S, the number of monomials in the other variables
    surviving I with the S-variables set to 1.
    """
    _check_rank(rank, sub)
    if sub.order is not ModuleOrder.TOP:
        sub = module_groebner(list(sub.generators), ModuleOrder.TOP, ring=sub.ring, rank=rank)
    n = sub.ring.n
    per_position: Dict[int, Tuple[int, int]] = {
        pos: _position_signature(monos, n) for pos, monos in enumerate(_leading_by_position(rank, sub))
    }
    dim = max((d for d, _ in per_position.values()), default=-1)
    if dim < 0:
        return ModuleSignature(-1, 0)
    multiplicity = sum(e for d, e in per_position.values() if d == dim)
    return ModuleSignature(dim, multiplicity)
