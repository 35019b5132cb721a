from enum import Enum
from typing import Dict, Iterable, List, Sequence, Tuple

from charp_core.exceptions import StructuralError

from charp_sdk.algebra.polynomial import Monomial, PolynomialRing, SparsePolynomial

# (position, monomial) -> residue
ModuleTerm = Tuple[int, Monomial]
TermMap = Dict[ModuleTerm, int]


class ModuleOrder(str, Enum):
    """
    Monomial orders on the free module R^t, both refining grevlex on R.

    POT compares positions first (position 0 is the largest), TOP compares
    monomials first and breaks ties by position. TOP is degree-compatible,
    which Hilbert-function and signature computations rely on.
    """

    POT = "pot"
    TOP = "top"

    def key(self, term: ModuleTerm) -> Tuple[int, ...]:
        """Flat integer sort key; larger key means larger term."""
        pos, mono = term
        grevlex = (sum(mono),) + tuple(-e for e in reversed(mono))
        if self is ModuleOrder.POT:
            return (-pos,) + grevlex
        return grevlex + (-pos,)

    def heap_key(self, term: ModuleTerm) -> Tuple[int, ...]:
        """Key whose ascending order is descending term order, for use with heapq."""
        return tuple(-k for k in self.key(term))


class FreeModuleVector:
    """
    An element of the free module R^rank over a polynomial ring.

    Immutable; components are stored as a tuple of SparsePolynomial.
    """

    __slots__ = ("ring", "components")

    def __init__(self, ring: PolynomialRing, components: Sequence[SparsePolynomial]):
        comps = tuple(components)
        for c in comps:
            if c.ring != ring:
                raise StructuralError(f"vector component in {c.ring}, expected {ring}")
        self.ring = ring
        self.components = comps

    @classmethod
    def zero(cls, ring: PolynomialRing, rank: int) -> "FreeModuleVector":
        return cls(ring, [ring.zero()] * rank)

    @classmethod
    def basis_vector(cls, ring: PolynomialRing, rank: int, i: int) -> "FreeModuleVector":
        if not 0 <= i < rank:
            raise StructuralError(f"basis index {i} out of range for rank {rank}")
        comps = [ring.zero()] * rank
        comps[i] = ring.one()
        return cls(ring, comps)

    @classmethod
    def from_terms(cls, ring: PolynomialRing, rank: int, terms: TermMap) -> "FreeModuleVector":
        per_position: List[Dict[Monomial, int]] = [{} for _ in range(rank)]
        for (pos, mono), c in terms.items():
            per_position[pos][mono] = c
        return cls(ring, [SparsePolynomial(ring, t) for t in per_position])

    @property
    def rank(self) -> int:
        return len(self.components)

    def term_map(self) -> TermMap:
        out: TermMap = {}
        for pos, comp in enumerate(self.components):
            for mono, c in comp.term_dict().items():
                out[(pos, mono)] = c
        return out

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def leading_term(self, order: ModuleOrder) -> Tuple[ModuleTerm, int]:
        terms = self.term_map()
        if not terms:
            raise StructuralError("the zero vector has no leading term")
        lead = max(terms, key=order.key)
        return lead, terms[lead]

    def _check(self, other: "FreeModuleVector") -> None:
        if other.ring != self.ring or other.rank != self.rank:
            raise StructuralError(
                f"vectors of rank {self.rank} over {self.ring} and rank {other.rank} over {other.ring}"
            )

    def __add__(self, other: "FreeModuleVector") -> "FreeModuleVector":
        self._check(other)
        return FreeModuleVector(self.ring, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "FreeModuleVector") -> "FreeModuleVector":
        self._check(other)
        return FreeModuleVector(self.ring, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self) -> "FreeModuleVector":
        return FreeModuleVector(self.ring, [-a for a in self.components])

    def scale(self, f: SparsePolynomial) -> "FreeModuleVector":
        return FreeModuleVector(self.ring, [a * f for a in self.components])

    def project(self, positions: Iterable[int]) -> "FreeModuleVector":
        return FreeModuleVector(self.ring, [self.components[i] for i in positions])

    def __getitem__(self, i: int) -> SparsePolynomial:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FreeModuleVector):
            return NotImplemented
        return self.ring == other.ring and self.components == other.components

    def __hash__(self) -> int:
        return hash((self.ring, self.components))

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    def __repr__(self) -> str:
        return f"FreeModuleVector{str(self)}"


def canonical_text(vector: FreeModuleVector) -> str:
    """Deterministic text form used for hashing and reports."""
    return "[" + "; ".join(str(c) for c in vector.components) + "]"
