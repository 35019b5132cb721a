import logging
from itertools import product
from math import comb
from typing import Dict, Iterable, List, Mapping, Tuple, Union

import sympy
from charp_core.exceptions import PolynomialSyntaxError, StructuralError

from charp_sdk.algebra.field import validate_prime
from charp_sdk.algebra.parser import make_symbols, parse_expression, rational_to_residue
from charp_sdk.algebra.polynomial import Monomial, PolynomialRing, SparsePolynomial

logger = logging.getLogger(__name__)

# (x-exponents, ∂-exponents)
WeylMonomial = Tuple[Monomial, Monomial]

ORDER_GUARD_FACTOR = 4


def _falling(c: int, k: int, p: int) -> int:
    out = 1
    for t in range(k):
        out = out * (c - t) % p
    return out


class WeylElement:
    """
    An element Σ c x^a ∂^b of the crystalline Weyl algebra over F_p, in normal form.

    All x's stand left of all ∂'s and no zero coefficient is stored. Unlike
    Grothendieck's ring of differential operators there are no divided
    powers: ∂^p is a nonzero central element.
    """

    __slots__ = ("n", "p", "_terms")

    def __init__(self, n: int, p: int, terms: Mapping[WeylMonomial, int]):
        validate_prime(p)
        clean: Dict[WeylMonomial, int] = {}
        for (a, b), c in terms.items():
            if len(a) != n or len(b) != n:
                raise StructuralError(f"Weyl monomial {(a, b)} does not have {n} variables")
            c %= p
            if c:
                clean[(tuple(a), tuple(b))] = c
        self.n = n
        self.p = p
        self._terms = clean

    # --- Constructors ---

    @classmethod
    def zero(cls, n: int, p: int) -> "WeylElement":
        return cls(n, p, {})

    @classmethod
    def one(cls, n: int, p: int) -> "WeylElement":
        return cls.constant(n, p, 1)

    @classmethod
    def constant(cls, n: int, p: int, c: int) -> "WeylElement":
        z = (0,) * n
        return cls(n, p, {(z, z): c})

    @classmethod
    def x(cls, n: int, p: int, i: int) -> "WeylElement":
        _check_index(i, n)
        a = tuple(1 if k == i else 0 for k in range(n))
        return cls(n, p, {(a, (0,) * n): 1})

    @classmethod
    def d(cls, n: int, p: int, i: int) -> "WeylElement":
        _check_index(i, n)
        b = tuple(1 if k == i else 0 for k in range(n))
        return cls(n, p, {((0,) * n, b): 1})

    @classmethod
    def from_polynomial(cls, f: SparsePolynomial) -> "WeylElement":
        z = (0,) * f.ring.n
        return cls(f.ring.n, f.ring.p, {(m, z): c for m, c in f.term_dict().items()})

    # --- Inspection ---

    def terms(self) -> List[Tuple[WeylMonomial, int]]:
        """Terms sorted by (∂-degree, x-degree, exponents), descending."""
        return sorted(
            self._terms.items(),
            key=lambda t: (sum(t[0][1]), sum(t[0][0]), t[0][1], t[0][0]),
            reverse=True,
        )

    def term_dict(self) -> Dict[WeylMonomial, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def order(self) -> int:
        """Total ∂-degree; -1 for zero."""
        return max((sum(b) for _, b in self._terms), default=-1)

    def is_function(self) -> bool:
        return all(sum(b) == 0 for _, b in self._terms)

    def to_polynomial(self, ring: PolynomialRing) -> SparsePolynomial:
        """The order-0 element as a polynomial of `ring`."""
        if not self.is_function():
            raise StructuralError(f"{self} has positive order and is not a function")
        _check_ring(self, ring)
        return SparsePolynomial(ring, {a: c for (a, _), c in self._terms.items()})

    def coefficient_of_derivative(self, b: Monomial, ring: PolynomialRing) -> SparsePolynomial:
        """The polynomial g_b with self = Σ_b g_b(x) ∂^b."""
        _check_ring(self, ring)
        return SparsePolynomial(ring, {a: c for (a, bb), c in self._terms.items() if bb == tuple(b)})

    # --- Arithmetic ---

    def _check(self, other: "WeylElement") -> None:
        if other.n != self.n or other.p != self.p:
            raise StructuralError(
                f"Weyl algebras differ: (n={self.n}, p={self.p}) vs (n={other.n}, p={other.p})"
            )

    def __add__(self, other: Union["WeylElement", int]) -> "WeylElement":
        if isinstance(other, int):
            other = WeylElement.constant(self.n, self.p, other)
        self._check(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return WeylElement(self.n, self.p, out)

    __radd__ = __add__

    def __neg__(self) -> "WeylElement":
        return WeylElement(self.n, self.p, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: Union["WeylElement", int]) -> "WeylElement":
        if isinstance(other, int):
            other = WeylElement.constant(self.n, self.p, other)
        return self + (-other)

    def __rsub__(self, other: int) -> "WeylElement":
        return WeylElement.constant(self.n, self.p, other) - self

    def scale(self, c: int) -> "WeylElement":
        return WeylElement(self.n, self.p, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other: Union["WeylElement", int]) -> "WeylElement":
        if isinstance(other, int):
            return self.scale(other)
        return weyl_mul(self, other)

    def __rmul__(self, other: int) -> "WeylElement":
        return self.scale(other)

    def __pow__(self, exponent: int) -> "WeylElement":
        if exponent < 0:
            raise StructuralError("negative powers of Weyl elements are not defined")
        result = WeylElement.one(self.n, self.p)
        for _ in range(exponent):
            result = weyl_mul(result, self)
        return result

    def commutator(self, other: "WeylElement") -> "WeylElement":
        return weyl_mul(self, other) - weyl_mul(other, self)

    # --- Protocols ---

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == WeylElement.constant(self.n, self.p, other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.n == other.n and self.p == other.p and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, self.p, frozenset(self._terms.items())))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (a, b), c in self.terms():
            factors = [_power(f"x{i}", e) for i, e in enumerate(a) if e]
            factors += [_power(f"d{i}", e) for i, e in enumerate(b) if e]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"WeylElement({str(self)!r}, n={self.n}, p={self.p})"


def _power(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def _check_index(i: int, n: int) -> None:
    if not 0 <= i < n:
        raise StructuralError(f"variable index {i} out of range for {n} variables")


def _check_ring(a: WeylElement, ring: PolynomialRing) -> None:
    if ring.n != a.n or ring.p != a.p:
        raise StructuralError(f"Weyl element (n={a.n}, p={a.p}) does not act on {ring}")


def check_order(a: WeylElement) -> None:
    """Rejects operators whose ∂-degree exceeds 4p."""
    if a.order() > ORDER_GUARD_FACTOR * a.p:
        raise StructuralError(
            f"operator of order {a.order()} exceeds the supported bound {ORDER_GUARD_FACTOR * a.p}"
        )


def weyl_mul(a: WeylElement, b: WeylElement) -> WeylElement:
    """
    Normal-form product.

    (x^a ∂^b)(x^c ∂^d) = Σ_k Π_i C(b_i, k_i) (c_i)_{k_i} x^{a+c-k} ∂^{b+d-k},
    summing over 0 <= k <= min(b, c), with (c)_k the falling factorial.

    Raises:
        StructuralError: On mismatched algebras or operands above the order guard.
    """
    a._check(b)
    check_order(a)
    check_order(b)
    p = a.p
    out: Dict[WeylMonomial, int] = {}
    for (xa, da), c1 in a._terms.items():
        for (xc, dd), c2 in b._terms.items():
            ranges = [range(min(bi, ci) + 1) for bi, ci in zip(da, xc)]
            for k in product(*ranges):
                coeff = c1 * c2
                for bi, ci, ki in zip(da, xc, k):
                    if ki:
                        coeff = coeff * comb(bi, ki) * _falling(ci, ki, p) % p
                        if not coeff:
                            break
                if not coeff % p:
                    continue
                xm = tuple(u + v - w for u, v, w in zip(xa, xc, k))
                dm = tuple(u + v - w for u, v, w in zip(da, dd, k))
                key = (xm, dm)
                out[key] = (out.get(key, 0) + coeff) % p
    return WeylElement(a.n, p, out)


def apply_operator(op: WeylElement, g: SparsePolynomial) -> SparsePolynomial:
    """Action on O: ∂_i acts as ∂/∂x_i and x_i as multiplication."""
    _check_ring(op, g.ring)
    ring = g.ring
    derivatives: Dict[Monomial, SparsePolynomial] = {}

    def derivative(b: Monomial) -> SparsePolynomial:
        if b not in derivatives:
            h = g
            for i, e in enumerate(b):
                for _ in range(e):
                    h = h.partial_derivative(i)
                    if h.is_zero():
                        break
            derivatives[b] = h
        return derivatives[b]

    result = ring.zero()
    for (a, b), c in op._terms.items():
        h = derivative(b)
        if not h.is_zero():
            result = result + h.mul_term(a, c)
    return result


def weyl_sum(n: int, p: int, elements: Iterable[WeylElement]) -> WeylElement:
    total = WeylElement.zero(n, p)
    for e in elements:
        total = total + e
    return total


def parse_operator(text: str, n: int, p: int) -> WeylElement:
    """
    Reads an operator such as `x0^2*d0 + d1^3`.

    Factors are multiplied in the order written, so `d0*x0` reads as
    x0*d0 + 1.

    Raises:
        PolynomialSyntaxError: On malformed text or unknown symbols.
    """
    names = [f"x{i}" for i in range(n)] + [f"d{i}" for i in range(n)]
    symbols = make_symbols(names, commutative=False)
    expr = sympy.expand(parse_expression(text, symbols))
    generators = {f"x{i}": WeylElement.x(n, p, i) for i in range(n)}
    generators.update({f"d{i}": WeylElement.d(n, p, i) for i in range(n)})
    total = WeylElement.zero(n, p)
    for term in sympy.Add.make_args(expr):
        commutative, ordered = term.args_cnc()
        coeff = sympy.Mul(*commutative)
        if not coeff.is_Rational:
            raise PolynomialSyntaxError(f"non-numeric coefficient {coeff} in {text!r}")
        value = WeylElement.constant(n, p, rational_to_residue(sympy.Rational(coeff), p, text))
        for factor in ordered:
            base, exponent = factor.as_base_exp()
            if not isinstance(base, sympy.Symbol) or not exponent.is_Integer or exponent < 0:
                raise PolynomialSyntaxError(f"unsupported factor {factor} in {text!r}")
            value = weyl_mul(value, generators[base.name] ** int(exponent))
        total = total + value
    logger.debug(f"Parsed operator {text!r} as {total}")
    return total

