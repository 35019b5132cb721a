import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from charp_core.exceptions import StructuralError
from charp_core.types import Exponents

from charp_sdk.algebra.field import FieldElement, inverse_mod, validate_prime

logger = logging.getLogger(__name__)

Monomial = Exponents
Scalar = Union[int, FieldElement]


def grevlex_key(monomial: Monomial) -> Tuple[int, Tuple[int, ...]]:
    """Sort key realizing graded reverse lexicographic order (larger key = larger monomial)."""
    return (sum(monomial), tuple(-e for e in reversed(monomial)))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_quotient(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def monomial_product(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class PolynomialRing:
    """
    The ring F_p[v_0, ..., v_{n-1}].

    Variables are named `x0..x{n-1}` for coordinates on X and `y0..y{n-1}`
    for the Frobenius twist X'. The modulus is fixed per ring, so values from
    different sessions can never be mixed silently.
    """

    variables: Tuple[str, ...]
    p: int

    def __post_init__(self) -> None:
        validate_prime(self.p)
        if len(set(self.variables)) != len(self.variables):
            raise StructuralError(f"duplicate variable names in {self.variables}")

    @classmethod
    def with_prefix(cls, prefix: str, n: int, p: int) -> "PolynomialRing":
        return cls(tuple(f"{prefix}{i}" for i in range(n)), p)

    @classmethod
    def x_ring(cls, n: int, p: int) -> "PolynomialRing":
        return cls.with_prefix("x", n, p)

    @classmethod
    def y_ring(cls, n: int, p: int) -> "PolynomialRing":
        return cls.with_prefix("y", n, p)

    @property
    def n(self) -> int:
        return len(self.variables)

    def frobenius_twist(self) -> "PolynomialRing":
        """The coordinate ring of X' (same variable count, `y` names)."""
        return PolynomialRing.y_ring(self.n, self.p)

    def zero(self) -> "SparsePolynomial":
        return SparsePolynomial(self, {})

    def one(self) -> "SparsePolynomial":
        return self.constant(1)

    def constant(self, c: Scalar) -> "SparsePolynomial":
        return SparsePolynomial(self, {(0,) * self.n: int(c)})

    def var(self, i: int) -> "SparsePolynomial":
        self.check_index(i)
        exps = [0] * self.n
        exps[i] = 1
        return SparsePolynomial(self, {tuple(exps): 1})

    def gens(self) -> List["SparsePolynomial"]:
        return [self.var(i) for i in range(self.n)]

    def monomial(self, exponents: Sequence[int], coefficient: Scalar = 1) -> "SparsePolynomial":
        if len(exponents) != self.n:
            raise StructuralError(
                f"monomial {tuple(exponents)} has {len(exponents)} exponents, ring has {self.n} variables"
            )
        return SparsePolynomial(self, {tuple(exponents): int(coefficient)})

    def check_index(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise StructuralError(f"variable index {i} out of range for {self.n} variables")

    def parse(self, text: str) -> "SparsePolynomial":
        from charp_sdk.algebra.parser import parse_polynomial

        return parse_polynomial(text, self)

    def __str__(self) -> str:
        return f"F_{self.p}[{', '.join(self.variables)}]"


class SparsePolynomial:
    """
    A polynomial over a prime field, stored as a map monomial -> residue.

    Instances are immutable: no stored zero coefficients, residues in [0, p),
    terms iterated in descending graded reverse lexicographic order.
    """

    __slots__ = ("ring", "_terms", "_sorted", "_hash")

    def __init__(self, ring: PolynomialRing, terms: Mapping[Monomial, int]):
        p = ring.p
        clean: Dict[Monomial, int] = {}
        for mono, c in terms.items():
            c %= p
            if c:
                if len(mono) != ring.n:
                    raise StructuralError(
                        f"monomial {mono} does not belong to {ring}"
                    )
                clean[tuple(mono)] = c
        self.ring = ring
        self._terms = clean
        self._sorted: Optional[List[Tuple[Monomial, int]]] = None
        self._hash: Optional[int] = None

    @classmethod
    def _trusted(cls, ring: PolynomialRing, terms: Dict[Monomial, int]) -> "SparsePolynomial":
        obj = cls.__new__(cls)
        obj.ring = ring
        obj._terms = terms
        obj._sorted = None
        obj._hash = None
        return obj

    # --- Inspection ---

    def terms(self) -> List[Tuple[Monomial, int]]:
        """Terms in descending grevlex order."""
        if self._sorted is None:
            self._sorted = sorted(
                self._terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True
            )
        return self._sorted

    def term_dict(self) -> Dict[Monomial, int]:
        return dict(self._terms)

    def monomials(self) -> List[Monomial]:
        return [m for m, _ in self.terms()]

    def coefficient(self, monomial: Sequence[int]) -> int:
        return self._terms.get(tuple(monomial), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self._terms)

    def constant_value(self) -> int:
        return self._terms.get((0,) * self.ring.n, 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def degree_in(self, i: int) -> int:
        self.ring.check_index(i)
        return max((m[i] for m in self._terms), default=-1)

    def leading_term(self) -> Tuple[Monomial, int]:
        if not self._terms:
            raise StructuralError("the zero polynomial has no leading term")
        return self.terms()[0]

    def leading_monomial(self) -> Monomial:
        return self.leading_term()[0]

    def leading_coefficient(self) -> int:
        return self.leading_term()[1]

    def variables_used(self) -> Tuple[int, ...]:
        return tuple(i for i in range(self.ring.n) if any(m[i] for m in self._terms))

    # --- Arithmetic ---

    def _check_ring(self, other: "SparsePolynomial") -> None:
        if other.ring != self.ring:
            raise StructuralError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other: Union["SparsePolynomial", Scalar]) -> "SparsePolynomial":
        if isinstance(other, SparsePolynomial):
            self._check_ring(other)
            return other
        if isinstance(other, FieldElement):
            if other.p != self.ring.p:
                raise StructuralError(f"modulus mismatch: {other.p} vs {self.ring.p}")
            return self.ring.constant(other.value)
        if isinstance(other, int):
            return self.ring.constant(other)
        raise TypeError(f"cannot combine SparsePolynomial with {type(other).__name__}")

    def __add__(self, other: Union["SparsePolynomial", Scalar]) -> "SparsePolynomial":
        other = self._coerce(other)
        p = self.ring.p
        result = dict(self._terms)
        for mono, c in other._terms.items():
            v = (result.get(mono, 0) + c) % p
            if v:
                result[mono] = v
            else:
                result.pop(mono, None)
        return SparsePolynomial._trusted(self.ring, result)

    __radd__ = __add__

    def __neg__(self) -> "SparsePolynomial":
        p = self.ring.p
        return SparsePolynomial._trusted(self.ring, {m: p - c for m, c in self._terms.items()})

    def __sub__(self, other: Union["SparsePolynomial", Scalar]) -> "SparsePolynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Union["SparsePolynomial", Scalar]) -> "SparsePolynomial":
        return self._coerce(other) - self

    def __mul__(self, other: Union["SparsePolynomial", Scalar]) -> "SparsePolynomial":
        if isinstance(other, (int, FieldElement)):
            return self.scale(other)
        other = self._coerce(other)
        p = self.ring.p
        result: Dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                result[mono] = (result.get(mono, 0) + c1 * c2) % p
        return SparsePolynomial._trusted(self.ring, {m: c for m, c in result.items() if c})

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "SparsePolynomial":
        if exponent < 0:
            raise StructuralError("negative powers of polynomials are not defined")
        result = self.ring.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c: Scalar) -> "SparsePolynomial":
        c = int(c) % self.ring.p
        if c == 0:
            return self.ring.zero()
        p = self.ring.p
        return SparsePolynomial._trusted(self.ring, {m: (v * c) % p for m, v in self._terms.items()})

    def mul_term(self, monomial: Monomial, c: int = 1) -> "SparsePolynomial":
        """Multiplies by the single term c * x^monomial."""
        c %= self.ring.p
        if c == 0:
            return self.ring.zero()
        p = self.ring.p
        return SparsePolynomial._trusted(
            self.ring,
            {monomial_product(m, monomial): (v * c) % p for m, v in self._terms.items()},
        )

    def monic(self) -> "SparsePolynomial":
        if self.is_zero():
            return self
        return self.scale(inverse_mod(self.leading_coefficient(), self.ring.p))

    def frobenius(self) -> "SparsePolynomial":
        """f^p, computed as x^a -> x^{p a} (prime-field coefficients are Frobenius-fixed)."""
        p = self.ring.p
        return SparsePolynomial._trusted(
            self.ring, {tuple(p * e for e in m): c for m, c in self._terms.items()}
        )

    # --- Calculus and substitution ---

    def partial_derivative(self, i: int) -> "SparsePolynomial":
        self.ring.check_index(i)
        p = self.ring.p
        result: Dict[Monomial, int] = {}
        for mono, c in self._terms.items():
            e = mono[i]
            v = (c * e) % p
            if v:
                shifted = mono[:i] + (e - 1,) + mono[i + 1 :]
                result[shifted] = v
        return SparsePolynomial._trusted(self.ring, result)

    def evaluate(self, point: Sequence[int]) -> int:
        if len(point) != self.ring.n:
            raise StructuralError(f"point {tuple(point)} has wrong length for {self.ring}")
        p = self.ring.p
        total = 0
        for mono, c in self._terms.items():
            v = c
            for x, e in zip(point, mono):
                if e:
                    v = v * pow(x, e, p) % p
            total += v
        return total % p

    def substitute(
        self, images: Sequence["SparsePolynomial"], target: Optional[PolynomialRing] = None
    ) -> "SparsePolynomial":
        """Replaces variable i by images[i]; the result lives in the images' ring."""
        if len(images) != self.ring.n:
            raise StructuralError(
                f"substitution needs {self.ring.n} images, got {len(images)}"
            )
        if target is None:
            target = images[0].ring if images else self.ring
        for img in images:
            if img.ring != target:
                raise StructuralError(f"substitution image outside {target}")
        powers: Dict[Tuple[int, int], SparsePolynomial] = {}

        def power(i: int, e: int) -> SparsePolynomial:
            key = (i, e)
            if key not in powers:
                powers[key] = images[i] ** e
            return powers[key]

        result = target.zero()
        for mono, c in self._terms.items():
            term = target.constant(c)
            for i, e in enumerate(mono):
                if e:
                    term = term * power(i, e)
            result = result + term
        return result

    def rename(self, target: PolynomialRing) -> "SparsePolynomial":
        """Same exponent structure, read in another ring with the same variable count and modulus."""
        if target.n != self.ring.n or target.p != self.ring.p:
            raise StructuralError(f"cannot rename {self.ring} into {target}")
        return SparsePolynomial._trusted(target, dict(self._terms))

    def p_power_substitute(self, target: Optional[PolynomialRing] = None) -> "SparsePolynomial":
        """f' = pi^* f: x_i -> y_i with coefficients raised to the p-th power (the identity on F_p)."""
        return self.rename(target or self.ring.frobenius_twist())

    def univariate_divmod(
        self, divisor: "SparsePolynomial"
    ) -> Tuple["SparsePolynomial", "SparsePolynomial"]:
        """Euclidean division in a one-variable ring."""
        self._check_ring(divisor)
        if self.ring.n != 1:
            raise StructuralError(f"univariate division requested in {self.ring}")
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.ring.p
        (db,), lc = divisor.leading_term()
        inv = inverse_mod(lc, p)
        remainder = dict(self._terms)
        quotient: Dict[Monomial, int] = {}
        while remainder:
            top = max(e for (e,) in remainder)
            if top < db:
                break
            c = remainder[(top,)] * inv % p
            shift = top - db
            quotient[(shift,)] = c
            for (e,), v in divisor._terms.items():
                key = (e + shift,)
                nv = (remainder.get(key, 0) - c * v) % p
                if nv:
                    remainder[key] = nv
                else:
                    remainder.pop(key, None)
        return (
            SparsePolynomial._trusted(self.ring, quotient),
            SparsePolynomial._trusted(self.ring, remainder),
        )

    # --- Protocols ---

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self == self.ring.constant(other)
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: List[str] = []
        for mono, c in self.terms():
            factors = []
            for name, e in zip(self.ring.variables, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"SparsePolynomial({str(self)!r}, p={self.ring.p})"


def poly_arith(a: SparsePolynomial, b: SparsePolynomial, op: str) -> SparsePolynomial:
    """
    Adds or multiplies two polynomials of the same ring.

    Raises:
        StructuralError: On ring mismatch.
        ValueError: For an unknown operation name.
    """
    if a.ring != b.ring:
        raise StructuralError(f"ring mismatch: {a.ring} vs {b.ring}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}; expected 'add' or 'mul'")


def partial_derivative(f: SparsePolynomial, i: int) -> SparsePolynomial:
    return f.partial_derivative(i)


def p_power_substitute(
    f: SparsePolynomial, target: Optional[PolynomialRing] = None
) -> SparsePolynomial:
    return f.p_power_substitute(target)


def sum_polynomials(ring: PolynomialRing, polys: Iterable[SparsePolynomial]) -> SparsePolynomial:
    total: Dict[Monomial, int] = {}
    p = ring.p
    for f in polys:
        if f.ring != ring:
            raise StructuralError(f"ring mismatch: {f.ring} vs {ring}")
        for m, c in f._terms.items():
            total[m] = (total.get(m, 0) + c) % p
    return SparsePolynomial._trusted(ring, {m: c for m, c in total.items() if c})
