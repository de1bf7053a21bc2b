"""Exact rational scalars and the one-variable families built from them.

Scalars cross module boundaries as ``fractions.Fraction``; polynomial
coefficients live in sympy's ``QQ`` domain. ``to_fraction`` and ``to_qq``
convert between the two.
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial
from sympy import Rational, hermite_poly, laguerre_poly
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, ring
from constants import CLOSED, HERMITE, LAGUERRE, RECURSION, RATIONAL_REGEX
import re

UNI_RING, X = ring("x", QQ)


def to_fraction(val) -> Fraction:
    if isinstance(val, bool) or isinstance(val, float):
        raise ValueError(f"{val!r} is not an exact rational")
    if isinstance(val, Fraction):
        return val
    if isinstance(val, int):
        return Fraction(val)
    if isinstance(val, str):
        if not re.match(RATIONAL_REGEX, val.strip()):
            raise ValueError(f"'{val}' is not a rational like 3/2")
        try:
            return Fraction(val.strip())
        except ZeroDivisionError:
            raise ValueError(f"'{val}' has a zero denominator")
    return Fraction(int(val.numerator), int(val.denominator))


def to_qq(val):
    val = to_fraction(val)
    return QQ(val.numerator, val.denominator)


def format_rational(val) -> str:
    return str(to_fraction(val))


@lru_cache(maxsize=None)
def pochhammer(z: Fraction, n: int) -> Fraction:
    result = Fraction(1)
    for i in range(n):
        result *= z + i
    return result


@lru_cache(maxsize=None)
def gbinom(a: Fraction, k: int) -> Fraction:
    return pochhammer(Fraction(a) - k + 1, k) / factorial(k)


@lru_cache(maxsize=None)
def c_coeff(s: int, a: Fraction) -> Fraction:
    a = Fraction(a)
    return (-1) ** s * pochhammer(a - 2 * s + 1, 2 * s) / (4**s * factorial(s))


@lru_cache(maxsize=None)
def _b_recursion(n: int, a: Fraction, s: int) -> Fraction:
    if s == 0:
        return Fraction(1)
    return c_coeff(s, a) - sum(
        (_b_recursion(n, a, j) * c_coeff(s - j, a + n - 2 * j) for j in range(s)),
        Fraction(0),
    )


def _b_closed(n: int, a: Fraction, s: int) -> Fraction:
    # chains s = s_0 > s_1 > ... > s_j >= 0, each contributing a signed product of c's
    def chains(top: int, depth: int):
        if depth == 0:
            yield (top,)
            return
        for below in range(top):
            for rest in chains(below, depth - 1):
                yield (top,) + rest

    total = c_coeff(s, a)
    for depth in range(1, s + 1):
        for chain in chains(s, depth):
            term = Fraction((-1) ** depth) * c_coeff(chain[-1], a)
            for upper, lower in zip(chain, chain[1:]):
                term *= c_coeff(upper - lower, a + n - 2 * lower)
            total += term
    return total


def b_coeff(n: int, a, s: int, mode: str = RECURSION) -> Fraction:
    a = to_fraction(a)
    if mode == RECURSION:
        return _b_recursion(n, a, s)
    if mode == CLOSED:
        return _b_closed(n, a, s)
    raise ValueError(f"Unknown mode '{mode}'")


def _from_sympy_poly(poly) -> PolyElement:
    terms = poly.set_domain(QQ).as_dict(native=True)
    return UNI_RING.from_dict(terms) if terms else UNI_RING.zero


@lru_cache(maxsize=None)
def classical_poly(kind: str, n: int, a: Fraction | None = None) -> PolyElement:
    if kind == HERMITE:
        return _from_sympy_poly(hermite_poly(n, polys=True))
    if kind == LAGUERRE:
        if a is None:
            raise ValueError("Laguerre polynomials need a parameter")
        a = to_fraction(a)
        alpha = Rational(a.numerator, a.denominator)
        return _from_sympy_poly(laguerre_poly(n, alpha=alpha, polys=True))
    raise ValueError(f"Unknown polynomial kind '{kind}'")


def derivative(q: PolyElement, order: int = 1) -> PolyElement:
    for _ in range(order):
        q = q.diff(q.ring.gens[0])
    return q
