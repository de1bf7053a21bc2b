"""Contour-integral basis functions expanded into exact symmetric polynomials.

f_n is the sum over all non-negative integer solutions (kappa, nu) of the
constraint system

    n_j - sum_{l<j} kappa_lj + sum_{l>j} kappa_jl - sum_l nu_lj = 0

of prod (-1)^kappa C(lam, kappa) * prod (-1)^nu C(-lam, nu) * x_r^(sum_s nu_rs).
For fixed kappa the nu-sum factorizes over columns into the polynomials
G_t(x) = sum_{|nu|=t} prod_l (lam)_{nu_l}/nu_l! x_l^nu_l, which is what the
default strategy uses.
"""

import itertools
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Protocol
from sympy.combinatorics import Permutation
from sympy.polys.rings import PolyElement
from constants import INDUCTION, KAPPA, MODEL_A, NAIVE, X_VAR
from errors import IncompatibleMethodError
from models.base import ConstraintSolution, ModelParams
from utils.exact import c_coeff, gbinom, pochhammer, to_qq
from utils.sympoly import polyring, tail_sums, weak_compositions

logger = logging.getLogger(__name__)

Label = tuple[int, ...]


class ExpansionStore(Protocol):
    def get(self, key: tuple) -> PolyElement | None: ...

    def put(self, key: tuple, poly: PolyElement) -> None: ...


_memo: dict[tuple, PolyElement] = {}
_store: ExpansionStore | None = None


def set_store(store: ExpansionStore | None):
    global _store
    _store = store


def clear_memo():
    _memo.clear()


def _kappa_columns(n: Label) -> Iterator[tuple[dict[tuple[int, int], int], tuple[int, ...]]]:
    """Yield (kappa, column sums of nu) for every admissible kappa, from the last column down."""
    N = len(n)

    def column(j: int, kappa: dict, sums: tuple[int, ...]):
        if j < 0:
            yield kappa, sums
            return
        available = n[j] + sum(kappa[(j, l)] for l in range(j + 1, N))
        if available < 0:
            return
        for entries in _bounded_vectors(j, available):
            chosen = dict(kappa)
            for l, value in enumerate(entries):
                chosen[(l, j)] = value
            yield from column(j - 1, chosen, (available - sum(entries),) + sums)

    yield from column(N - 1, {}, ())


def _bounded_vectors(length: int, total: int) -> Iterator[tuple[int, ...]]:
    if length == 0:
        yield ()
        return
    for first in range(total + 1):
        for rest in _bounded_vectors(length - 1, total - first):
            yield (first,) + rest


def _kappa_weight(kappa: dict[tuple[int, int], int], lam: Fraction) -> Fraction:
    weight = Fraction(1)
    for value in kappa.values():
        weight *= (-1) ** value * gbinom(lam, value)
    return weight


def _solution_weight(solution: ConstraintSolution, lam: Fraction) -> Fraction:
    weight = Fraction(1)
    N = len(solution.nu)
    for i in range(N):
        for j in range(i + 1, N):
            weight *= (-1) ** solution.kappa[i][j] * gbinom(lam, solution.kappa[i][j])
    for row in solution.nu:
        for value in row:
            weight *= (-1) ** value * gbinom(-lam, value)
    return weight


def _nu_matrices(sums: tuple[int, ...], N: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    columns = [list(weak_compositions(total, N)) for total in sums]
    for chosen in itertools.product(*columns):
        yield tuple(tuple(chosen[s][r] for s in range(N)) for r in range(N))


def _as_matrix(kappa: dict[tuple[int, int], int], N: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(kappa.get((i, j), 0) for j in range(N)) for i in range(N))


def enumerate_solutions(n: Label, N: int) -> Iterator[ConstraintSolution]:
    if len(n) != N or min(tail_sums(n), default=0) < 0:
        return
    for kappa, sums in _kappa_columns(n):
        matrix = _as_matrix(kappa, N)
        for nu in _nu_matrices(sums, N):
            yield ConstraintSolution(kappa=matrix, nu=nu)


def _naive_solutions(n: Label) -> Iterator[ConstraintSolution]:
    N = len(n)
    tails = tail_sums(n)
    pairs = [(l, i) for i in range(N) for l in range(i)]
    bounds = [min(tails[j] for j in range(l + 1, i + 1)) for l, i in pairs]
    for values in itertools.product(*(range(bound + 1) for bound in bounds)):
        kappa = dict(zip(pairs, values))
        sums = tuple(
            n[j]
            - sum(kappa[(l, j)] for l in range(j))
            + sum(kappa[(j, l)] for l in range(j + 1, N))
            for j in range(N)
        )
        if min(sums) < 0:
            continue
        matrix = _as_matrix(kappa, N)
        for nu in _nu_matrices(sums, N):
            yield ConstraintSolution(kappa=matrix, nu=nu)


@lru_cache(maxsize=None)
def _column_poly(N: int, lam: Fraction, total: int, var: str) -> PolyElement:
    R = polyring(N, var)
    terms = {}
    for exps in weak_compositions(total, N):
        coeff = Fraction(1)
        for e in exps:
            coeff *= pochhammer(lam, e) / pochhammer(Fraction(1), e)
        if coeff:
            terms[exps] = to_qq(coeff)
    return R.from_dict(terms) if terms else R.zero


@lru_cache(maxsize=None)
def _column_product(N: int, lam: Fraction, sums: tuple[int, ...], var: str) -> PolyElement:
    result = polyring(N, var).one
    for total in sums:
        if total:
            result = result * _column_poly(N, lam, total, var)
    return result


def _expand_kappa(n: Label, lam: Fraction, var: str) -> PolyElement:
    N = len(n)
    result = polyring(N, var).zero
    for kappa, sums in _kappa_columns(n):
        weight = _kappa_weight(kappa, lam)
        if weight:
            result = result + _column_product(N, lam, tuple(sorted(sums)), var) * to_qq(weight)
    return result


def _expand_solutions(solutions: Iterator[ConstraintSolution], N: int, lam: Fraction, var: str) -> PolyElement:
    terms: dict[tuple[int, ...], Fraction] = {}
    for solution in solutions:
        weight = _solution_weight(solution, lam)
        if weight:
            exps = solution.exponents
            terms[exps] = terms.get(exps, Fraction(0)) + weight
    R = polyring(N, var)
    terms = {exps: to_qq(coeff) for exps, coeff in terms.items() if coeff}
    return R.from_dict(terms) if terms else R.zero


def f_expand(n: Label, params: ModelParams, strategy: str = KAPPA) -> PolyElement:
    n = tuple(n)
    N, lam, var = params.N, params.lam, params.var
    if min(tail_sums(n), default=0) < 0:
        return polyring(N, var).zero
    key = (N, lam, n, var, strategy)
    if key in _memo:
        return _memo[key]
    if _store is not None and strategy == KAPPA:
        stored = _store.get(key)
        if stored is not None:
            _memo[key] = stored
            return stored
    if strategy == KAPPA:
        result = _expand_kappa(n, lam, var)
    elif strategy == INDUCTION:
        result = _expand_solutions(enumerate_solutions(n, N), N, lam, var)
    elif strategy == NAIVE:
        result = _expand_solutions(_naive_solutions(n), N, lam, var)
    else:
        raise ValueError(f"Unknown strategy '{strategy}'")
    logger.debug("f%s expanded with %d terms (%s)", n, len(result), strategy)
    _memo[key] = result
    if _store is not None and strategy == KAPPA:
        _store.put(key, result)
    return result


def shifted_label(n: Label, lam: Fraction) -> tuple[Fraction, ...]:
    N = len(n)
    return tuple(n[j] + lam * (N - j) for j in range(N))


def _half_steps(n: Label) -> Iterator[tuple[int, ...]]:
    """Vectors s >= 0 such that n - 2s keeps every tail sum non-negative."""
    N = len(n)
    tails = tail_sums(n)

    def extend(j: int, used: int, chosen: tuple[int, ...]):
        if j < 0:
            yield chosen
            return
        for s in range((tails[j] - 2 * used) // 2 + 1):
            yield from extend(j - 1, used + s, (s,) + chosen)

    yield from extend(N - 1, 0, ())


def fH_expand(n: Label, params: ModelParams) -> PolyElement:
    if params.model != MODEL_A:
        raise IncompatibleMethodError("Hermite-flavoured basis needs model A")
    n = tuple(n)
    R = polyring(params.N, X_VAR)
    if min(tail_sums(n), default=0) < 0:
        return R.zero
    key = (params.N, params.lam, n, "H")
    if key in _memo:
        return _memo[key]
    shifted = shifted_label(n, params.lam)
    result = R.zero
    for s in _half_steps(n):
        coeff = Fraction(1)
        for s_j, a in zip(s, shifted):
            coeff *= c_coeff(s_j, a - 1)
        if coeff:
            lowered = tuple(n_j - 2 * s_j for n_j, s_j in zip(n, s))
            result = result + f_expand(lowered, params) * to_qq(coeff)
    _memo[key] = result
    return result


def schur(n: Label, N: int, var: str = X_VAR) -> PolyElement:
    """Schur polynomial as the ratio of the alternants a_{n+delta} / a_delta."""
    R = polyring(N, var)
    raised = [n[i] + N - 1 - i for i in range(N)]
    staircase = [N - 1 - i for i in range(N)]

    def alternant(exps: list[int]) -> PolyElement:
        terms = {}
        for perm in itertools.permutations(range(N)):
            monom = [0] * N
            for i, target in enumerate(perm):
                monom[target] = exps[i]
            terms[tuple(monom)] = to_qq(Permutation(list(perm)).signature())
        return R.from_dict(terms)

    return alternant(raised).exquo(alternant(staircase))
