"""Textual polynomial syntax: `2*x0^2*x1 + x2 - 1`, with `^` or `**` for powers."""

import logging
from tokenize import TokenError
from typing import Dict

import sympy
from charp_core.exceptions import PolynomialSyntaxError
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)

from charp_sdk.algebra.field import inverse_mod
from charp_sdk.algebra.polynomial import Monomial, PolynomialRing, SparsePolynomial

logger = logging.getLogger(__name__)

TRANSFORMATIONS = standard_transformations + (convert_xor,)
# Names the parser may resolve besides the ring variables.
PARSER_GLOBALS = {"Integer": sympy.Integer, "Rational": sympy.Rational, "Symbol": sympy.Symbol, "Float": sympy.Float}


def make_symbols(names, commutative: bool = True) -> Dict[str, sympy.Symbol]:
    return {name: sympy.Symbol(name, commutative=commutative) for name in names}


def parse_expression(text: str, local_dict: Dict[str, sympy.Symbol]) -> sympy.Expr:
    """Parses `text` with only the given names in scope."""
    if not isinstance(text, str) or not text.strip():
        raise PolynomialSyntaxError(f"empty polynomial text: {text!r}")
    try:
        expr = parse_expr(
            text,
            local_dict=dict(local_dict),
            global_dict=dict(PARSER_GLOBALS),
            transformations=TRANSFORMATIONS,
        )
    except (SyntaxError, TypeError, ValueError, TokenError) as e:
        raise PolynomialSyntaxError(f"cannot parse {text!r}: {e}") from e
    if not isinstance(expr, sympy.Expr):
        raise PolynomialSyntaxError(f"{text!r} is not an algebraic expression")
    unknown = {s.name for s in expr.free_symbols} - set(local_dict)
    if unknown:
        raise PolynomialSyntaxError(
            f"unknown variables {sorted(unknown)} in {text!r}; expected {sorted(local_dict)}"
        )
    if expr.has(sympy.Float):
        raise PolynomialSyntaxError(f"floating-point literals are not allowed: {text!r}")
    return expr


def rational_to_residue(value: sympy.Rational, p: int, context: str) -> int:
    num, den = int(value.p), int(value.q)
    if den % p == 0:
        raise PolynomialSyntaxError(f"denominator {den} vanishes modulo {p} in {context!r}")
    return num * inverse_mod(den, p) % p


def parse_polynomial(text: str, ring: PolynomialRing) -> SparsePolynomial:
    """
    Reads a polynomial over `ring` from text.

    Rational constants are reduced modulo p when their denominator is a unit.

    Raises:
        PolynomialSyntaxError: On malformed text, unknown variable names,
            negative powers or non-invertible denominators.
    """
    symbols = make_symbols(ring.variables)
    expr = parse_expression(text, symbols)
    gens = [symbols[name] for name in ring.variables]
    try:
        poly = sympy.Poly(expr, *gens, domain="QQ") if gens else None
    except sympy.PolynomialError as e:
        raise PolynomialSyntaxError(f"{text!r} is not a polynomial in {ring.variables}: {e}") from e
    terms: Dict[Monomial, int] = {}
    if poly is None:
        if not expr.is_Rational:
            raise PolynomialSyntaxError(f"{text!r} is not a constant")
        terms[()] = rational_to_residue(sympy.Rational(expr), ring.p, text)
    else:
        for monom, coeff in poly.terms():
            terms[tuple(int(e) for e in monom)] = rational_to_residue(
                sympy.Rational(coeff), ring.p, text
            )
    result = SparsePolynomial(ring, terms)
    logger.debug(f"Parsed {text!r} as {result} in {ring}")
    return result

