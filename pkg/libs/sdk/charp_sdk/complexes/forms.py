from typing import Dict, Sequence, Tuple

from charp_sdk.algebra.polynomial import PolynomialRing, SparsePolynomial
from charp_sdk.complexes.chain import wedge_sign

# q-form Σ_S g_S dx_S keyed by increasing index tuples S
Subset = Tuple[int, ...]
Form = Dict[Subset, SparsePolynomial]


def _accumulate(out: Form, key: Subset, term: SparsePolynomial, ring: PolynomialRing) -> None:
    out[key] = out.get(key, ring.zero()) + term


def _clean(form: Form) -> Form:
    return {S: g for S, g in form.items() if not g.is_zero()}


def wedge_one_form(ring: PolynomialRing, one_form: Sequence[SparsePolynomial], form: Form) -> Form:
    """(Σ_i h_i dx_i) ∧ Σ_S g_S dx_S"""
    out: Form = {}
    for S, g in form.items():
        for i, h in enumerate(one_form):
            if i in S or h.is_zero():
                continue
            term = h * g
            _accumulate(out, tuple(sorted(S + (i,))), term if wedge_sign(i, S) > 0 else -term, ring)
    return _clean(out)


def exterior_derivative(ring: PolynomialRing, form: Form) -> Form:
    """d(Σ g_S dx_S) = Σ_S Σ_i ∂_i g_S dx_i ∧ dx_S"""
    out: Form = {}
    for S, g in form.items():
        gradient = [g.partial_derivative(i) for i in range(ring.n)]
        for T, h in wedge_one_form(ring, gradient, {S: ring.one()}).items():
            _accumulate(out, T, h, ring)
    return _clean(out)


def contract(ring: PolynomialRing, field: Sequence[SparsePolynomial], form: Form) -> Form:
    """ι_V(g dx_S) = Σ_t (-1)^t V_{s_t} g dx_{S minus s_t}"""
    out: Form = {}
    for S, g in form.items():
        for t, s in enumerate(S):
            v = field[s]
            if v.is_zero():
                continue
            term = v * g
            _accumulate(out, S[:t] + S[t + 1 :], term if t % 2 == 0 else -term, ring)
    return _clean(out)


def scale_form(form: Form, factor: SparsePolynomial) -> Form:
    return _clean({S: factor * g for S, g in form.items()})


def add_forms(ring: PolynomialRing, *forms: Form) -> Form:
    out: Form = {}
    for form in forms:
        for S, g in form.items():
            _accumulate(out, S, g, ring)
    return _clean(out)
