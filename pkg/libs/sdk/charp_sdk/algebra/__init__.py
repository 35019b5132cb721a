from .field import FieldElement, inverse_mod, validate_prime
from .matrix import PolyMatrix
from .parser import parse_polynomial
from .polynomial import (
    Monomial,
    PolynomialRing,
    SparsePolynomial,
    grevlex_key,
    p_power_substitute,
    partial_derivative,
    poly_arith,
)
from .sampling import monomials_of_degree, monomials_up_to, random_polynomial

__all__ = [
    "FieldElement",
    "Monomial",
    "PolyMatrix",
    "PolynomialRing",
    "SparsePolynomial",
    "grevlex_key",
    "inverse_mod",
    "monomials_of_degree",
    "monomials_up_to",
    "p_power_substitute",
    "parse_polynomial",
    "partial_derivative",
    "poly_arith",
    "random_polynomial",
    "validate_prime",
]
