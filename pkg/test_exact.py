from fractions import Fraction
import pytest
from constants import CLOSED, HERMITE, LAGUERRE, RECURSION
from utils.exact import (
    X,
    b_coeff,
    c_coeff,
    classical_poly,
    derivative,
    format_rational,
    gbinom,
    pochhammer,
    to_fraction,
    to_qq,
)

HALF = Fraction(1, 2)
A_GRID = [Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2), Fraction(5, 2)]
Z_GRID = [Fraction(0), Fraction(1, 3), Fraction(-5, 2), Fraction(7)]


def scaled_hermite(n: int):
    return classical_poly(HERMITE, n) * to_qq(Fraction(1, 2**n))


def test_to_fraction_accepts_rationals():
    assert to_fraction("3/2") == Fraction(3, 2)
    assert to_fraction(" -4 ") == Fraction(-4)
    assert to_fraction(7) == Fraction(7)
    assert to_fraction(Fraction(2, 4)) == HALF


@pytest.mark.parametrize("val", [1.5, "1.5", "x", "1/0", True])
def test_to_fraction_rejects_inexact(val):
    with pytest.raises(ValueError):
        to_fraction(val)


def test_format_rational():
    assert format_rational(Fraction(-3, 6)) == "-1/2"
    assert format_rational(Fraction(4, 2)) == "2"


def test_pochhammer_examples():
    assert pochhammer(Fraction(5, 7), 0) == 1
    assert pochhammer(Fraction(3), 2) == 12
    assert pochhammer(HALF, 3) == Fraction(15, 8)


@pytest.mark.parametrize("z", Z_GRID)
def test_pochhammer_step(z):
    for n in range(50):
        assert pochhammer(z, n + 1) == pochhammer(z, n) * (z + n)


def test_gbinom_examples():
    assert gbinom(Fraction(2, 3), 0) == 1
    assert gbinom(HALF, 2) == Fraction(-1, 8)
    assert gbinom(Fraction(-2), 2) == 3
    assert (-1) ** 2 * gbinom(Fraction(-2), 2) == pochhammer(Fraction(2), 2) / 2


def test_c_coeff_examples():
    assert c_coeff(0, Fraction(7, 3)) == 1
    assert c_coeff(1, Fraction(2)) == Fraction(-1, 2)
    assert c_coeff(1, 1 + HALF) == Fraction(-3, 16)


@pytest.mark.parametrize("mode", [RECURSION, CLOSED])
def test_b_coeff_examples(mode):
    a = Fraction(7, 3)
    assert b_coeff(3, a, 0, mode) == 1
    assert b_coeff(1, a, 2, mode) == 0
    assert b_coeff(1, a, 1, mode) == a / 2


@pytest.mark.parametrize("a", A_GRID)
def test_b_coeff_modes_agree(a):
    for n in range(-6, 7):
        for s in range(9):
            assert b_coeff(n, a, s, RECURSION) == b_coeff(n, a, s, CLOSED), (n, a, s)


@pytest.mark.parametrize("a", A_GRID)
def test_b_coeff_truncates_for_nonnegative_n(a):
    for n in range(4):
        for s in range(n + 1, n + 4):
            assert b_coeff(n, a, s) == 0


def test_b_coeff_rejects_unknown_mode():
    with pytest.raises(ValueError):
        b_coeff(1, HALF, 1, "fast")


def test_classical_poly_examples():
    assert classical_poly(HERMITE, 0) == X**0
    assert classical_poly(HERMITE, 2) == 4 * X**2 - 2
    a = Fraction(3, 2)
    assert classical_poly(LAGUERRE, 1, a) == -X + to_qq(1 + a)


def test_laguerre_needs_parameter():
    with pytest.raises(ValueError):
        classical_poly(LAGUERRE, 2)


def test_hermite_three_term_recursion():
    for n in range(1, 30):
        assert X * scaled_hermite(n) == scaled_hermite(n + 1) + scaled_hermite(n - 1) * to_qq(Fraction(n, 2))


def test_hermite_differential_equation():
    for n in range(30):
        h = classical_poly(HERMITE, n)
        assert -derivative(h, 2) + X * derivative(h) * 2 == h * (2 * n)


@pytest.mark.parametrize("a", [HALF, Fraction(1), Fraction(5, 2)])
def test_laguerre_differential_equation(a):
    for n in range(30):
        q = classical_poly(LAGUERRE, n, a)
        first, second = derivative(q), derivative(q, 2)
        assert X * second + first * to_qq(a + 1) - X * first + q * n == 0
