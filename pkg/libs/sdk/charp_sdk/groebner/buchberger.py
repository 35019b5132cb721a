import heapq
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

from charp_cache import content_key, current_cache
from charp_core.exceptions import StructuralError

from charp_sdk.algebra.field import inverse_mod
from charp_sdk.algebra.polynomial import (
    Monomial,
    PolynomialRing,
    monomial_divides,
    monomial_lcm,
    monomial_quotient,
)
from charp_sdk.groebner.vectors import (
    FreeModuleVector,
    ModuleOrder,
    ModuleTerm,
    TermMap,
    canonical_text,
)
from charp_sdk.version import ENGINE_VERSION

logger = logging.getLogger(__name__)

CACHE_NAMESPACE = "groebner"


@dataclass(frozen=True)
class _Element:
    lead: ModuleTerm
    terms: TermMap  # monic


class _Basis:
    """Mutable working basis indexed by leading position."""

    def __init__(self, order: ModuleOrder, p: int):
        self.order = order
        self.p = p
        self.elements: List[_Element] = []
        self.by_position: Dict[int, List[int]] = {}

    def add(self, terms: TermMap) -> int:
        lead = max(terms, key=self.order.key)
        inv = inverse_mod(terms[lead], self.p)
        if inv != 1:
            terms = {t: c * inv % self.p for t, c in terms.items()}
        idx = len(self.elements)
        self.elements.append(_Element(lead, terms))
        self.by_position.setdefault(lead[0], []).append(idx)
        return idx

    def reducer(self, term: ModuleTerm, exclude: Optional[int] = None) -> Optional[_Element]:
        pos, mono = term
        for idx in self.by_position.get(pos, ()):
            if idx == exclude:
                continue
            el = self.elements[idx]
            if monomial_divides(el.lead[1], mono):
                return el
        return None


def _normal_form(f: TermMap, basis: _Basis, exclude: Optional[int] = None) -> TermMap:
    """Full reduction of f; terms are visited in descending order through a lazy heap."""
    p = basis.p
    order = basis.order
    work = dict(f)
    heap = [(order.heap_key(t), t) for t in work]
    heapq.heapify(heap)
    remainder: TermMap = {}
    while heap:
        _, t = heapq.heappop(heap)
        c = work.get(t)
        if not c:
            continue
        el = basis.reducer(t, exclude)
        if el is None:
            remainder[t] = c
            del work[t]
            continue
        shift = monomial_quotient(t[1], el.lead[1])
        for (pos, mono), v in el.terms.items():
            nt = (pos, tuple(a + b for a, b in zip(mono, shift)))
            old = work.get(nt, 0)
            nv = (old - c * v) % p
            if nv:
                work[nt] = nv
                if not old:
                    heapq.heappush(heap, (order.heap_key(nt), nt))
            else:
                work.pop(nt, None)
    return remainder


def _s_vector(a: _Element, b: _Element, p: int) -> TermMap:
    lcm = monomial_lcm(a.lead[1], b.lead[1])
    sa = monomial_quotient(lcm, a.lead[1])
    sb = monomial_quotient(lcm, b.lead[1])
    out: TermMap = {}
    for (pos, mono), c in a.terms.items():
        out[(pos, tuple(x + y for x, y in zip(mono, sa)))] = c
    for (pos, mono), c in b.terms.items():
        t = (pos, tuple(x + y for x, y in zip(mono, sb)))
        v = (out.get(t, 0) - c) % p
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def _buchberger(gens: Sequence[TermMap], order: ModuleOrder, p: int, rank: int) -> List[TermMap]:
    basis = _Basis(order, p)
    pending: List[Tuple[int, int, int]] = []
    pending_set: Set[Tuple[int, int]] = set()
    stats = {"pairs": 0, "zero_reductions": 0, "coprime": 0, "chain": 0}

    def insert(terms: TermMap) -> None:
        idx = basis.add(terms)
        lead = basis.elements[idx].lead
        for k in basis.by_position[lead[0]]:
            if k == idx:
                continue
            deg = sum(monomial_lcm(basis.elements[k].lead[1], lead[1]))
            heapq.heappush(pending, (deg, k, idx))
            pending_set.add((k, idx))

    for g in gens:
        r = _normal_form(g, basis)
        if r:
            insert(r)

    while pending:
        _, i, j = heapq.heappop(pending)
        pending_set.discard((i, j))
        a, b = basis.elements[i], basis.elements[j]
        lcm = monomial_lcm(a.lead[1], b.lead[1])
        if rank == 1 and all(x == 0 or y == 0 for x, y in zip(a.lead[1], b.lead[1])):
            stats["coprime"] += 1
            continue
        if _chain_criterion(basis, i, j, lcm, pending_set):
            stats["chain"] += 1
            continue
        stats["pairs"] += 1
        r = _normal_form(_s_vector(a, b, p), basis)
        if r:
            insert(r)
        else:
            stats["zero_reductions"] += 1

    logger.debug(f"Buchberger over rank {rank} ({order.value}): {len(basis.elements)} elements, {stats}")
    return _reduce_basis(basis)


def _chain_criterion(
    basis: _Basis, i: int, j: int, lcm: Monomial, pending: Set[Tuple[int, int]]
) -> bool:
    pos = basis.elements[i].lead[0]
    for k in basis.by_position[pos]:
        if k in (i, j):
            continue
        if not monomial_divides(basis.elements[k].lead[1], lcm):
            continue
        if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
            continue
        return True
    return False


def _reduce_basis(basis: _Basis) -> List[TermMap]:
    order = basis.order
    indices = sorted(range(len(basis.elements)), key=lambda k: (order.key(basis.elements[k].lead), k))
    kept: List[int] = []
    for k in indices:
        lead = basis.elements[k].lead
        if any(
            basis.elements[m].lead[0] == lead[0]
            and monomial_divides(basis.elements[m].lead[1], lead[1])
            for m in kept
        ):
            continue
        kept.append(k)
    minimal = _Basis(order, basis.p)
    for k in kept:
        minimal.add(basis.elements[k].terms)
    reduced = []
    for idx, el in enumerate(minimal.elements):
        tail = {t: c for t, c in el.terms.items() if t != el.lead}
        r = _normal_form(tail, minimal, exclude=idx)
        r[el.lead] = 1
        reduced.append(r)
    reduced.sort(key=lambda t: order.key(max(t, key=order.key)), reverse=True)
    return reduced


@dataclass(frozen=True)
class ModuleGroebnerBasis:
    """
    The reduced Gröbner basis of a submodule of R^rank.

    Generators are monic, auto-reduced and sorted by descending leading term,
    so equal submodules produce identical objects.
    """

    ring: PolynomialRing
    rank: int
    order: ModuleOrder
    generators: Tuple[FreeModuleVector, ...]

    def _working_basis(self) -> _Basis:
        b = _Basis(self.order, self.ring.p)
        for g in self.generators:
            b.add(g.term_map())
        return b

    def leading_terms(self) -> List[ModuleTerm]:
        return [g.leading_term(self.order)[0] for g in self.generators]

    def leading_monomials_at(self, position: int) -> List[Monomial]:
        return [mono for pos, mono in self.leading_terms() if pos == position]

    def reduce(self, vector: FreeModuleVector) -> FreeModuleVector:
        """Normal form of `vector` modulo the submodule."""
        if vector.rank != self.rank or vector.ring != self.ring:
            raise StructuralError(f"cannot reduce a rank-{vector.rank} vector modulo a rank-{self.rank} module")
        r = _normal_form(vector.term_map(), self._working_basis())
        return FreeModuleVector.from_terms(self.ring, self.rank, r)

    def contains(self, vector: FreeModuleVector) -> bool:
        return self.reduce(vector).is_zero()

    def is_whole_module(self) -> bool:
        """True iff the submodule is all of R^rank."""
        units = {pos for pos, mono in self.leading_terms() if sum(mono) == 0}
        return len(units) == self.rank

    def is_zero(self) -> bool:
        return not self.generators

    def s_vectors_reduce_to_zero(self) -> bool:
        """Buchberger's criterion on the stored generators."""
        b = self._working_basis()
        for i, a in enumerate(b.elements):
            for j in range(i + 1, len(b.elements)):
                c = b.elements[j]
                if a.lead[0] != c.lead[0]:
                    continue
                if _normal_form(_s_vector(a, c, b.p), b):
                    return False
        return True

    def to_text(self) -> List[str]:
        return [canonical_text(g) for g in self.generators]


def _to_payload(terms: List[TermMap]) -> List[List[Tuple[int, Monomial, int]]]:
    return [sorted((pos, mono, c) for (pos, mono), c in t.items()) for t in terms]


def _from_payload(payload: List[List[Tuple[int, Monomial, int]]]) -> List[TermMap]:
    return [{(pos, tuple(mono)): c for pos, mono, c in g} for g in payload]


def groebner_cache_key(
    ring: PolynomialRing, rank: int, order: ModuleOrder, gens: Sequence[FreeModuleVector]
) -> str:
    return content_key(
        ENGINE_VERSION,
        CACHE_NAMESPACE,
        str(ring.p),
        ",".join(ring.variables),
        str(rank),
        order.value,
        *sorted(canonical_text(g) for g in gens),
    )


def module_groebner(
    gens: Sequence[FreeModuleVector],
    order: ModuleOrder = ModuleOrder.POT,
    ring: Optional[PolynomialRing] = None,
    rank: Optional[int] = None,
) -> ModuleGroebnerBasis:
    """
    Computes the reduced Gröbner basis of the submodule generated by `gens`.

    S-pairs are processed by the normal strategy (lowest lcm degree first,
    ties by index), skipping pairs by Buchberger's chain criterion and, for
    ideals, the coprime criterion. When a cache session is active the result
    is looked up and stored under a content hash of the inputs.

    Args:
        gens: Generators, all of the same rank over the same ring.
        order: Module monomial order.
        ring: Required when `gens` is empty.
        rank: Required when `gens` is empty.

    Raises:
        StructuralError: On mixed ranks or rings, or when the ambient module
            cannot be inferred.
    """
    if gens:
        ring = ring or gens[0].ring
        rank = gens[0].rank if rank is None else rank
    if ring is None or rank is None:
        raise StructuralError("module_groebner needs ring and rank when no generators are given")
    for g in gens:
        if g.ring != ring or g.rank != rank:
            raise StructuralError(
                f"generator of rank {g.rank} over {g.ring} in a rank-{rank} module over {ring}"
            )

    nonzero = [g for g in gens if not g.is_zero()]
    cache = current_cache()
    key = None
    if cache is not None:
        key = groebner_cache_key(ring, rank, order, nonzero)
        payload = cache.get(CACHE_NAMESPACE, key)
        if payload is not None:
            logger.debug(f"Gröbner cache hit {key[:12]}")
            return _assemble(ring, rank, order, _from_payload(payload))

    reduced = _buchberger([g.term_map() for g in nonzero], order, ring.p, rank)
    if cache is not None and key is not None:
        cache.put(CACHE_NAMESPACE, key, _to_payload(reduced))
    return _assemble(ring, rank, order, reduced)


def _assemble(
    ring: PolynomialRing, rank: int, order: ModuleOrder, terms: List[TermMap]
) -> ModuleGroebnerBasis:
    return ModuleGroebnerBasis(
        ring=ring,
        rank=rank,
        order=order,
        generators=tuple(FreeModuleVector.from_terms(ring, rank, t) for t in terms),
    )


def ideal_groebner(polys, order: ModuleOrder = ModuleOrder.POT) -> ModuleGroebnerBasis:
    """Gröbner basis of an ideal, as a rank-1 module."""
    polys = list(polys)
    if not polys:
        raise StructuralError("ideal_groebner needs at least one polynomial")
    ring = polys[0].ring
    return module_groebner([FreeModuleVector(ring, [f]) for f in polys], order, ring=ring, rank=1)
