from dataclasses import dataclass
from typing import Union

from charp_core.exceptions import StructuralError
from sympy import isprime

MAX_PRIME = 97


def validate_prime(p: int) -> int:
    """
    Checks that `p` is a supported modulus.

    Raises:
        StructuralError: If `p` is not a prime in [2, 97].
    """
    if isinstance(p, bool) or not isinstance(p, int):
        raise StructuralError(f"modulus must be an integer, got {p!r}")
    if not isprime(p):
        raise StructuralError(f"modulus must be prime, got {p}")
    if p > MAX_PRIME:
        raise StructuralError(f"modulus {p} exceeds the supported bound {MAX_PRIME}")
    return p


def inverse_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse modulo {p}")
    return pow(a, p - 2, p)


@dataclass(frozen=True)
class FieldElement:
    """
    An element of the prime field F_p.

    Values are kept as residues in [0, p). Mixing elements of different
    moduli raises `StructuralError`.
    """

    value: int
    p: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other: Union["FieldElement", int]) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise StructuralError(f"modulus mismatch: {self.p} vs {other.p}")
            return other.value
        return other % self.p

    def __add__(self, other: Union["FieldElement", int]) -> "FieldElement":
        return FieldElement(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other: Union["FieldElement", int]) -> "FieldElement":
        return FieldElement(self.value - self._coerce(other), self.p)

    def __rsub__(self, other: Union["FieldElement", int]) -> "FieldElement":
        return FieldElement(self._coerce(other) - self.value, self.p)

    def __mul__(self, other: Union["FieldElement", int]) -> "FieldElement":
        return FieldElement(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self) -> "FieldElement":
        return FieldElement(-self.value, self.p)

    def __pow__(self, exponent: int) -> "FieldElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return FieldElement(pow(self.value, exponent, self.p), self.p)

    def __truediv__(self, other: Union["FieldElement", int]) -> "FieldElement":
        return self * FieldElement(inverse_mod(self._coerce(other), self.p), self.p)

    def inverse(self) -> "FieldElement":
        return FieldElement(inverse_mod(self.value, self.p), self.p)

    def is_zero(self) -> bool:
        return self.value == 0

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)
