from itertools import product

import pytest
from charp_core.exceptions import StructuralError
from charp_core.types import Finite, InfiniteOrAbove

from charp_sdk.algebra import PolynomialRing, random_polynomial
from charp_sdk.groebner import (
    FreeModuleVector,
    ModuleOrder,
    ModuleSignature,
    hilbert_prefix,
    ideal_groebner,
    is_finite_quotient,
    module_groebner,
    module_signature,
    quotient_k_dimension,
    standard_basis,
)
from charp_sdk.linalg import FpMatrix


def ideal(ring, *texts):
    return ideal_groebner([ring.parse(t) for t in texts])


@pytest.mark.parametrize(
    "n,generators,expected",
    [
        (2, ("x0", "x1"), 1),
        (1, ("x0^2",), 2),
        (2, ("x0^2", "x1^3"), 6),
        (2, ("x0^2", "x0*x1", "x1^2"), 3),
        (2, ("x0", "x0 + 1"), 0),
    ],
)
def test_finite_quotients(n, generators, expected):
    gb = ideal(PolynomialRing.x_ring(n, 5), *generators)
    assert is_finite_quotient(1, gb)
    assert quotient_k_dimension(1, gb) == Finite(expected)
    assert len(standard_basis(1, gb)) == expected


def test_infinite_quotient_reports_a_lower_bound():
    gb = ideal(PolynomialRing.x_ring(2, 5), "x0")
    dim = quotient_k_dimension(1, gb, degree_cap=6)
    assert dim == InfiniteOrAbove(cap=6, lower_bound=7)
    with pytest.raises(StructuralError, match="infinite-dimensional"):
        standard_basis(1, gb)


def test_hilbert_prefix_of_a_plane_curve():
    gb = ideal(PolynomialRing.x_ring(2, 3), "x0^2 + x1^2")
    assert hilbert_prefix(1, gb, 4) == [1, 2, 2, 2, 2]


def test_rank_mismatch_is_rejected():
    gb = ideal(PolynomialRing.x_ring(1, 3), "x0")
    with pytest.raises(StructuralError, match="rank 1"):
        quotient_k_dimension(2, gb)


def test_module_quotient_counts_every_position():
    ring = PolynomialRing.x_ring(1, 3)
    gens = [
        FreeModuleVector(ring, [ring.parse("x0^2"), ring.zero()]),
        FreeModuleVector(ring, [ring.zero(), ring.parse("x0^3")]),
    ]
    assert quotient_k_dimension(2, module_groebner(gens)) == Finite(5)


@pytest.mark.parametrize(
    "n,generators,expected",
    [
        (2, ("x0",), ModuleSignature(1, 1)),
        (2, ("x0^2", "x1^2"), ModuleSignature(0, 4)),
        (2, ("x0*x1",), ModuleSignature(1, 2)),
        (3, ("x0^2 + x1^2 + x2^2",), ModuleSignature(2, 2)),
        (2, ("1",), ModuleSignature(-1, 0)),
    ],
)
def test_module_signature(n, generators, expected):
    assert module_signature(1, ideal(PolynomialRing.x_ring(n, 5), *generators)) == expected


def test_signature_of_the_zero_submodule():
    ring = PolynomialRing.x_ring(2, 3)
    assert module_signature(2, module_groebner([], ring=ring, rank=2)) == ModuleSignature(2, 2)


def test_signature_record_round_trip():
    sig = ModuleSignature(1, 3)
    assert ModuleSignature.from_record(sig.to_record()) == sig


# --- Cross-validation against dense elimination on a truncated box ---


def _box_oracle(ring, rank, bounds, extra):
    """
    dim of R^rank / (pure powers + extra), by linear algebra.

    Modulo x_i^bounds[i] at every position, the quotient is spanned by the
    box monomials and the submodule by the box multiples of `extra`.
    """
    box = list(product(*(range(b) for b in bounds)))
    index = {(pos, m): k for k, (pos, m) in enumerate((pos, m) for pos in range(rank) for m in box)}
    rows = []
    for g in extra:
        for shift in box:
            moved = g.scale(ring.monomial(shift))
            row = [0] * len(index)
            for (pos, mono), c in moved.term_map().items():
                if (pos, mono) in index:
                    row[index[(pos, mono)]] = c
            rows.append(row)
    if not rows:
        return len(index)
    return len(index) - FpMatrix(rows, ring.p).rank()


def test_quotient_dimension_agrees_with_truncated_elimination(rng):
    for _ in range(50):
        n, rank, p = rng.randint(1, 3), rng.randint(1, 4), rng.choice([2, 3, 5, 7])
        ring = PolynomialRing.x_ring(n, p)
        bounds = [rng.randint(1, 3) for _ in range(n)]
        gens = []
        for pos in range(rank):
            for i, b in enumerate(bounds):
                exps = [0] * n
                exps[i] = b
                comps = [ring.zero()] * rank
                comps[pos] = ring.monomial(exps)
                gens.append(FreeModuleVector(ring, comps))
        extra = [
            FreeModuleVector(ring, [random_polynomial(ring, rng.randint(1, 4), rng, 0.3) for _ in range(rank)])
            for _ in range(rng.randint(0, 2))
        ]
        gb = module_groebner(gens + extra, ring=ring, rank=rank)
        assert quotient_k_dimension(rank, gb) == Finite(_box_oracle(ring, rank, bounds, extra))


def test_dimension_does_not_depend_on_order():
    ring = PolynomialRing.x_ring(2, 5)
    gens = [
        FreeModuleVector(ring, [ring.parse("x0^2"), ring.parse("x1")]),
        FreeModuleVector(ring, [ring.parse("x1^2"), ring.zero()]),
        FreeModuleVector(ring, [ring.zero(), ring.parse("x0^2")]),
    ]
    dims = {quotient_k_dimension(2, module_groebner(gens, o)) for o in ModuleOrder}
    assert dims == {Finite(10)}
