from fractions import Fraction
import pytest
from constants import DOMINANCE, LAGUERRE, Z_VAR
from errors import IncompatibleMethodError, LabelError
from models.base import ModelParams
from services.hamops import (
    action_deviations,
    apply_reduced,
    apply_reduced_A,
    apply_reduced_B,
    monomial_action,
    monomial_action_printed,
    pair_coeffs_hermite,
    pair_identity_monomial,
    symmetrized_hermite,
)
from utils.exact import classical_poly, to_qq
from utils.sympoly import compare, divide_by_difference, is_symmetric, msym, partitions_of, polyring, weight

LAM = Fraction(1, 2)
LAM_GRID = ["1/2", "1", "3/2", "2", "5/2"]
PARAMS_A1 = ModelParams(model="A", N=1, lam=LAM)
PARAMS_A2 = ModelParams(model="A", N=2, lam=LAM)


def b_params(N: int, lam="3/2", mu="1/2") -> ModelParams:
    return ModelParams(model="B", N=N, lam=lam, mu=mu)


def test_constant_is_annihilated():
    assert apply_reduced_A(polyring(2).one, PARAMS_A2) == 0
    assert apply_reduced_B(polyring(2, Z_VAR).one, b_params(2)) == 0


def test_apply_reduced_A_examples():
    (x,) = polyring(1).gens
    assert apply_reduced_A(x**2, PARAMS_A1) == 4 * x**2 - 2
    x1, x2 = polyring(2).gens
    assert apply_reduced_A(msym((1, 1)), PARAMS_A2) == 8 * x1 * x2 + 2


def test_apply_reduced_B_example():
    params = b_params(1)
    (z,) = polyring(1, Z_VAR).gens
    assert apply_reduced_B(z, params) == 4 * z - to_qq(2 + 4 * params.mu)


@pytest.mark.parametrize("mu", ["1/2", "3/2"])
def test_laguerre_is_eigenfunction_of_reduced_B(mu):
    params = b_params(1, mu=mu)
    R = polyring(1, Z_VAR)
    for n in range(11):
        q = R.from_dict(dict(classical_poly(LAGUERRE, n, params.mu - Fraction(1, 2))))
        assert apply_reduced_B(q, params) == q * (4 * n)


def test_apply_reduced_dispatches_on_model():
    (z,) = polyring(1, Z_VAR).gens
    params = b_params(1)
    assert apply_reduced(z, params) == apply_reduced_B(z, params)
    with pytest.raises(IncompatibleMethodError):
        apply_reduced_A(z, params)
    with pytest.raises(IncompatibleMethodError):
        apply_reduced_B(z, PARAMS_A1)


@pytest.mark.parametrize("lam", LAM_GRID)
def test_reduced_operators_preserve_symmetry(lam):
    params_a = ModelParams(model="A", N=3, lam=lam)
    params_b = b_params(3, lam=lam)
    for n in [(1, 0, 0), (2, 1, 0), (3, 1, 1)]:
        assert is_symmetric(apply_reduced_A(msym(n), params_a))
        assert is_symmetric(apply_reduced_B(msym(n, Z_VAR), params_b))


def test_monomial_action_examples():
    lam = LAM
    assert monomial_action((2,), PARAMS_A1).entries == {(0,): -2}
    assert monomial_action((2, 0), PARAMS_A2).entries == {(0, 0): -2 - 2 * lam}
    assert monomial_action((1, 1), PARAMS_A2).entries == {(0, 0): 2 * lam}


def test_monomial_action_needs_partition():
    with pytest.raises(LabelError):
        monomial_action((0, 1), PARAMS_A2)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_monomial_action_lowers_degree_and_dominance(N):
    params = ModelParams(model="A", N=N, lam="3/2")
    for w in range(5):
        for n in partitions_of(w, N):
            for m in monomial_action(n, params).entries:
                assert weight(m) == weight(n) - 2
                assert compare(DOMINANCE, m, n)


def test_printed_action_deviates_on_equal_parts():
    lam = LAM
    assert monomial_action_printed((1, 1), PARAMS_A2).entries == {(0, 0): lam}
    assert action_deviations((1, 1), PARAMS_A2) == {(0, 0): (lam, 2 * lam)}
    assert action_deviations((2, 0), PARAMS_A2) == {}


def test_pair_identity_monomial_matches_direct_quotient():
    R = polyring(2)
    x, y = R.gens
    for n in range(9):
        for m in range(n + 1):
            sym = x**n * y**m + y**n * x**m
            direct = divide_by_difference(sym.diff(x) - sym.diff(y), 0, 1)
            assert pair_identity_monomial(n, m) == direct, (n, m)


def test_pair_coeffs_hermite_examples():
    assert pair_coeffs_hermite(1, 1) == {(0, 0): -4}
    assert pair_coeffs_hermite(2, 0) == {(0, 0): 4}
    assert pair_coeffs_hermite(1, 0) == {}


def test_pair_coeffs_hermite_reconstructs_quotient():
    x, y = polyring(2).gens
    for n in range(13):
        for m in range(min(n, 12 - n) + 1):
            coeffs = pair_coeffs_hermite(n, m)
            sym = symmetrized_hermite(n, m)
            rebuilt = polyring(2).zero
            for (a, b), coeff in coeffs.items():
                assert a + b <= n + m - 2
                assert (n + m - a - b) % 2 == 0
                rebuilt = rebuilt + symmetrized_hermite(a, b) * to_qq(coeff)
            assert rebuilt == divide_by_difference(sym.diff(x) - sym.diff(y), 0, 1)


def test_pair_coeffs_hermite_needs_ordered_pair():
    with pytest.raises(ValueError):
        pair_coeffs_hermite(0, 2)
