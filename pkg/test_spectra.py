from fractions import Fraction
import pytest
from constants import BMODEL, EXPLICIT, RECURSION, SUTHERLAND, THEOREM1, THEOREM2
from errors import IncompatibleMethodError, LabelError
from models.base import ModelParams
from services.hamops import apply_reduced
from services.spectra import (
    alpha_closed,
    alpha_table,
    alphaB_table,
    beta_table,
    energy,
    ground_energy,
    solve,
    support,
    sutherland_table,
)
from utils.exact import to_qq
from utils.sympoly import is_partition, labels_up_to, msym, partitions_of, polyring, weight

LAM = Fraction(1, 2)
LAM_GRID = ["1/2", "1", "3/2", "2", "5/2"]
MU_GRID = ["1/2", "3/2"]


def a_params(N: int, lam=LAM) -> ModelParams:
    return ModelParams(model="A", N=N, lam=lam)


def b_params(N: int, lam="3/2", mu="1/2") -> ModelParams:
    return ModelParams(model="B", N=N, lam=lam, mu=mu)


def a_methods(N: int):
    return (THEOREM1, THEOREM2, SUTHERLAND) if N <= 2 else (THEOREM1, SUTHERLAND)


def partitions_up_to(max_weight: int, N: int):
    return [n for w in range(max_weight + 1) for n in partitions_of(w, N)]


def assert_eigen(rec):
    scale = 4 if rec.params.model == "B" else 2
    assert rec.poly
    assert apply_reduced(rec.poly, rec.params) == rec.poly * (scale * weight(rec.label))
    assert rec.energy == energy(rec.label, rec.params)


def test_energies():
    assert ground_energy(a_params(2)) == 3
    assert energy((2,), a_params(1)) == 5
    assert energy((1, 0), a_params(2, 1)) == 6
    params = b_params(1)
    assert energy((1,), params) == 4 + 1 + 2 * params.mu


def test_alpha_examples():
    lam = LAM
    assert alpha_table((2,), a_params(1)).entries[(0,)] == -lam * (lam + 1) / 4
    assert alpha_table((2, 0), a_params(2)).entries[(0, 0)] == -lam * (2 * lam + 1) / 2


def test_alphaB_example():
    params = b_params(1, lam="1/2", mu="3/2")
    lam, mu = params.lam, params.mu
    assert alphaB_table((1,), params).entries[(0,)] == -lam * (2 * mu + 1) / 2


def test_beta_examples():
    for n in range(5):
        assert beta_table((n,), a_params(1)).entries == {(n,): 1}
    table = beta_table((2, 0), a_params(2))
    assert set(table.entries) <= {(2, 0), (0, 0)}


def test_sutherland_examples():
    lam = LAM
    assert sutherland_table((2,), a_params(1)).entries[(0,)] == Fraction(-1, 2)
    assert sutherland_table((1, 1), a_params(2)).entries[(0, 0)] == lam / 2
    assert sutherland_table((2, 0), a_params(2)).entries == {(2, 0): 1, (0, 0): -(1 + lam) / 2}


def test_zero_label_is_groundstate():
    for method in (THEOREM1, THEOREM2):
        rec = solve((0, 0), a_params(2), method)
        assert rec.poly == 1
        assert rec.energy == 3
    rec = solve((0, 0), a_params(2), SUTHERLAND)
    assert rec.poly == msym((0, 0)) == 2
    assert rec.energy == 3
    rec = solve((0, 0), b_params(2), BMODEL)
    assert rec.poly == 1
    assert rec.energy == ground_energy(b_params(2))


def test_solve_one_particle_example():
    (x,) = polyring(1).gens
    rec = solve((2,), a_params(1), THEOREM1)
    assert rec.poly == x**2 * to_qq(Fraction(3, 8)) - to_qq(Fraction(3, 16))
    assert rec.energy == 5
    assert rec.coeffs.entries[(2,)] == 1


def test_support_stays_below_target():
    for n in partitions_up_to(4, 3):
        for method in (THEOREM1, SUTHERLAND):
            for m in support(n, a_params(3), method):
                assert weight(m) < weight(n)
                if method == SUTHERLAND:
                    assert is_partition(m)
    assert support((1, -2), a_params(2), THEOREM1) == []


@pytest.mark.parametrize("lam", LAM_GRID)
def test_model_A_eigenfunctions(lam):
    for N, top in [(1, 4), (2, 4), (3, 3)]:
        params = a_params(N, lam)
        for n in partitions_up_to(top, N):
            for method in a_methods(N):
                assert_eigen(solve(n, params, method))


@pytest.mark.parametrize("lam", LAM_GRID)
@pytest.mark.parametrize("mu", MU_GRID)
def test_model_B_eigenfunctions(lam, mu):
    for N, top in [(1, 4), (2, 3)]:
        params = b_params(N, lam, mu)
        for n in partitions_up_to(top, N):
            assert_eigen(solve(n, params, BMODEL))


@pytest.mark.parametrize("lam", ["1/2", "3/2"])
def test_non_partition_labels_are_eigenfunctions(lam):
    params = a_params(2, lam)
    for n in labels_up_to(4, 2):
        if not is_partition(n):
            assert_eigen(solve(n, params, THEOREM1))
            assert_eigen(solve(n, params, THEOREM2))


@pytest.mark.parametrize("lam", ["1/2", "3/2", "2", "5/2"])
def test_theorem1_equals_theorem2_for_two_particles(lam):
    params = a_params(2, lam)
    for n in partitions_up_to(4, 2) + [(3, 3), (1, 3), (0, 4), (0, 5)]:
        first, second = solve(n, params, THEOREM1), solve(n, params, THEOREM2)
        assert first.poly == second.poly, n
        assert_eigen(second)


@pytest.mark.parametrize("lam", LAM_GRID)
def test_sutherland_modes_agree(lam):
    for N in (1, 2, 3):
        params = a_params(N, lam)
        for n in partitions_up_to(6, N):
            recursion = sutherland_table(n, params, RECURSION).entries
            assert recursion == sutherland_table(n, params, EXPLICIT).entries, n


def test_sutherland_rejects_unknown_mode():
    with pytest.raises(ValueError):
        sutherland_table((1, 1), a_params(2), "guess")


@pytest.mark.parametrize("lam", ["1/2", "3/2", "5/2"])
def test_alpha_closed_matches_table(lam):
    for N in (1, 2):
        for params, table, method in [
            (a_params(N, lam), alpha_table, THEOREM1),
            (b_params(N, lam), alphaB_table, BMODEL),
        ]:
            for n in labels_up_to(4, N):
                entries = table(n, params).entries
                for m in [n] + support(n, params, method):
                    assert alpha_closed(n, m, params) == entries.get(m, 0), (n, m)


def test_incompatible_methods():
    with pytest.raises(IncompatibleMethodError):
        solve((1, 0), b_params(2), THEOREM1)
    with pytest.raises(IncompatibleMethodError):
        solve((1, 0), a_params(2), BMODEL)
    with pytest.raises(IncompatibleMethodError):
        solve((0, 1), a_params(2), SUTHERLAND)
    with pytest.raises(LabelError):
        solve((1, 0, 0), a_params(2), THEOREM1)


@pytest.mark.slow
@pytest.mark.parametrize("lam", LAM_GRID)
def test_acceptance_grid(lam):
    for N, top in [(1, 6), (2, 6), (3, 5)]:
        params = a_params(N, lam)
        for n in partitions_up_to(top, N):
            for method in a_methods(N):
                assert_eigen(solve(n, params, method))
        for mu in MU_GRID:
            params = b_params(N, lam, mu)
            for n in partitions_up_to(top, N):
                assert_eigen(solve(n, params, BMODEL))
