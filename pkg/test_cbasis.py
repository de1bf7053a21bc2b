from fractions import Fraction
import pytest
from constants import INDUCTION, KAPPA, NAIVE, Z_VAR
from errors import IncompatibleMethodError
from models.base import ModelParams
from services.cbasis import (
    clear_memo,
    enumerate_solutions,
    f_expand,
    fH_expand,
    schur,
    set_store,
    shifted_label,
)
from utils.exact import to_qq
from utils.sympoly import is_symmetric, labels_up_to, msym, partitions_of, polyring, tail_sums, weight

LAM = Fraction(1, 2)
LAM_GRID = ["1/2", "3/2", "2"]


def a_params(N: int, lam=LAM) -> ModelParams:
    return ModelParams(model="A", N=N, lam=lam)


class DictStore:
    def __init__(self):
        self.saved = {}
        self.reads = 0

    def get(self, key):
        self.reads += 1
        return self.saved.get(key)

    def put(self, key, poly):
        self.saved[key] = poly


def test_zero_label_expands_to_one():
    assert f_expand((0, 0), a_params(2)) == 1
    assert f_expand((0, 0, 0), a_params(3)) == 1


def test_f_expand_examples():
    lam = LAM
    p = msym((1, 0))
    assert f_expand((1, 0), a_params(2)) == p * to_qq(lam)
    assert f_expand((0, 1), a_params(2)) == p * to_qq(lam * (1 - lam))
    assert f_expand((1, -1), a_params(2)) == 0


def test_f_expand_in_z_variables():
    params = ModelParams(model="B", N=2, lam="3/2", mu="1/2")
    assert f_expand((1, 0), params) == msym((1, 0), Z_VAR) * to_qq(Fraction(3, 2))


def test_enumerate_solutions_examples():
    assert len(list(enumerate_solutions((0, 0), 2))) == 1
    found = list(enumerate_solutions((1, 0), 2))
    assert len(found) == 2
    assert all(sol.kappa == ((0, 0), (0, 0)) for sol in found)
    assert list(enumerate_solutions((0, -1), 2)) == []


@pytest.mark.parametrize("N", [2, 3])
def test_solutions_satisfy_constraints(N):
    for n in labels_up_to(2, N):
        for sol in enumerate_solutions(n, N):
            assert sol.residuals(n) == (0,) * N
            assert all(entry >= 0 for row in sol.nu for entry in row)
            assert all(sol.kappa[i][j] == 0 for i in range(N) for j in range(i + 1))


@pytest.mark.parametrize("lam", LAM_GRID)
def test_strategies_agree(lam):
    for N, top in [(2, 5), (3, 5)]:
        params = a_params(N, lam)
        for n in labels_up_to(top, N):
            kappa = f_expand(n, params, KAPPA)
            assert kappa == f_expand(n, params, INDUCTION), n
            assert kappa == f_expand(n, params, NAIVE), n


@pytest.mark.parametrize("lam", LAM_GRID)
def test_f_expand_is_symmetric_and_homogeneous(lam):
    params = a_params(3, lam)
    for n in labels_up_to(8, 3):
        f = f_expand(n, params)
        assert is_symmetric(f)
        assert all(sum(monom) == weight(n) for monom in f.keys())


def test_f_expand_vanishes_below_tail_lattice():
    params = a_params(3)
    for n in [(2, -1, 0), (0, 1, -2), (3, 0, -1)]:
        assert min(tail_sums(n)) < 0
        assert f_expand(n, params) == 0


def test_unknown_strategy():
    with pytest.raises(ValueError):
        f_expand((2, 1), a_params(2, "5/7"), "guess")


def test_fH_expand_examples():
    assert fH_expand((0, 0), a_params(2)) == 1
    (x,) = polyring(1).gens
    assert fH_expand((1,), a_params(1)) == x * to_qq(LAM)
    assert fH_expand((2,), a_params(1)) == x**2 * to_qq(Fraction(3, 8)) - to_qq(Fraction(3, 16))


def test_fH_expand_needs_model_A():
    with pytest.raises(IncompatibleMethodError):
        fH_expand((1, 0), ModelParams(model="B", N=2, lam="1/2", mu="1/2"))


def test_shifted_label():
    assert shifted_label((2, 0), LAM) == (3, Fraction(1, 2))


def test_schur_examples():
    x1, x2 = polyring(2).gens
    assert schur((1, 0), 2) == x1 + x2
    assert schur((1, 1), 2) == x1 * x2
    assert schur((2, 0), 2) == x1**2 + x1 * x2 + x2**2


@pytest.mark.parametrize("N", [1, 2, 3])
def test_f_expand_at_lambda_one_is_schur(N):
    params = a_params(N, 1)
    for w in range(7):
        for n in partitions_of(w, N):
            f, s = f_expand(n, params), schur(n, N)
            assert f == s or f == -s, n


def test_store_backs_memo():
    store = DictStore()
    params = a_params(2, "7/3")
    clear_memo()
    set_store(store)
    try:
        first = f_expand((2, 1), params)
        assert len(store.saved) == 1
        clear_memo()
        assert f_expand((2, 1), params) == first
        assert store.reads == 2
    finally:
        set_store(None)
        clear_memo()
