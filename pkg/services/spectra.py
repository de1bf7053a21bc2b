"""Coefficient solvers for the reduced eigenfunctions.

Every solver fills a CoeffTable by a dynamic program over a finite support,
visiting labels by decreasing weight. Each label m collects

    coeff(m) = sum over steps (m -> m + E) of g(step; m) * coeff(m + E) / gap(m)

where the step families and g-factors depend on the method.
"""

import logging
from fractions import Fraction
from typing import Iterator
from sympy.polys.rings import PolyElement
from constants import (
    BMODEL,
    DOMINANCE,
    EXPLICIT,
    MODEL_A,
    MODEL_B,
    RECURSION,
    SUTHERLAND,
    THEOREM1,
    THEOREM2,
)
from errors import IncompatibleMethodError, LabelError
from models.base import CoeffTable, EigenRecord, ModelParams, StepDescriptor
from services.cbasis import f_expand, fH_expand, shifted_label
from services.hamops import monomial_action
from utils.exact import b_coeff, to_qq
from utils.sympoly import (
    compare,
    is_partition,
    labels_with_tails,
    msym,
    partitions_of,
    polyring,
    tail_sums,
    weight,
)

logger = logging.getLogger(__name__)

Label = tuple[int, ...]
Step = tuple[StepDescriptor, Fraction]


def ground_energy(params: ModelParams) -> Fraction:
    N, lam = params.N, params.lam
    if params.model == MODEL_B:
        return N * (1 + 2 * params.mu + 2 * lam * (N - 1))
    return N * (1 + lam * (N - 1))


def energy(n: Label, params: ModelParams) -> Fraction:
    scale = 4 if params.model == MODEL_B else 2
    return scale * weight(n) + ground_energy(params)


def _spacing(method: str) -> int:
    return 1 if method == BMODEL else 2


def _gap_scale(method: str) -> int:
    return 4 if method == BMODEL else 2


def _shift(N: int, j: int, k: int, at_j: int, at_k: int) -> Label:
    shift = [0] * N
    shift[j] += at_j
    shift[k] += at_k
    return tuple(shift)


def _add(m: Label, shift: Label) -> Label:
    return tuple(a + b for a, b in zip(m, shift))


def support(n: Label, params: ModelParams, method: str) -> list[Label]:
    """Labels below n, weight descending, that a solver may reach."""
    n = tuple(n)
    if method == SUTHERLAND:
        return [
            m
            for w in range(weight(n) - 2, -1, -2)
            for m in partitions_of(w, params.N)
            if compare(DOMINANCE, m, n, strict=True)
        ]
    tails = tail_sums(n)
    if min(tails) < 0:
        return []
    found = []
    for w in range(weight(n) - _spacing(method), -1, -_spacing(method)):
        found.extend(sorted(labels_with_tails(tails, total=w), reverse=True))
    return found


def _steps_theorem1(m: Label, bound: Label, params: ModelParams) -> Iterator[Step]:
    N, lam = params.N, params.lam
    shifted = shifted_label(m, lam)
    tails = tail_sums(m)
    for j in range(N):
        yield (
            StepDescriptor(j=j, k=j, nu=0, shift=_shift(N, j, j, 2, 0)),
            -shifted[j] * (shifted[j] + 1),
        )
    pair = 2 * lam * (lam - 1)
    if not pair:
        return
    for j in range(N):
        for k in range(j + 1, N):
            nu = 1
            while tails[k] + 1 + nu <= bound[k]:
                yield StepDescriptor(j=j, k=k, nu=nu, shift=_shift(N, j, k, 1 - nu, 1 + nu)), pair * nu
                nu += 1


def _steps_bmodel(m: Label, bound: Label, params: ModelParams) -> Iterator[Step]:
    N, lam, mu = params.N, params.lam, params.mu
    shifted = shifted_label(m, lam)
    tails = tail_sums(m)
    for j in range(N):
        yield (
            StepDescriptor(j=j, k=j, nu=0, shift=_shift(N, j, j, 1, 0)),
            -2 * (2 * (shifted[j] + mu - lam) + 1) * shifted[j],
        )
    pair = 4 * lam * (lam - 1)
    if not pair:
        return
    for j in range(N):
        for k in range(j + 1, N):
            nu = 1
            while tails[k] + nu <= bound[k]:
                yield StepDescriptor(j=j, k=k, nu=nu, shift=_shift(N, j, k, 1 - nu, nu)), pair * (2 * nu - 1)
                nu += 1


def _steps_theorem2(m: Label, bound: Label, params: ModelParams) -> Iterator[Step]:
    N, lam = params.N, params.lam
    pair = 2 * lam * (lam - 1)
    if not pair:
        return
    shifted = shifted_label(m, lam)
    tails = tail_sums(m)
    room = bound[0] - tails[0]
    for j in range(N):
        for k in range(j + 1, N):
            nu = 1
            while tails[k] + 1 + nu <= bound[k]:
                u = 0
                while tails[k] + 1 + 2 * u + nu <= bound[k]:
                    for t in range(min(nu - 1, (room - 2 - 2 * u) // 2) + 1):
                        factor = (
                            pair
                            * nu
                            * b_coeff(nu - 1, shifted[j] + 2 * t - nu, t)
                            * b_coeff(-1 - nu, shifted[k] + 2 * u + nu, u)
                        )
                        if factor:
                            step = StepDescriptor(
                                j=j, k=k, nu=nu, t=t, u=u,
                                shift=_shift(N, j, k, 1 + 2 * t - nu, 1 + 2 * u + nu),
                            )
                            yield step, factor
                    u += 1
                nu += 1


_STEPS = {THEOREM1: _steps_theorem1, THEOREM2: _steps_theorem2, BMODEL: _steps_bmodel}


def _check_method(n: Label, params: ModelParams, method: str):
    if len(n) != params.N:
        raise LabelError(f"Label {n} must have {params.N} entries")
    if method == BMODEL and params.model != MODEL_B:
        raise IncompatibleMethodError("bmodel needs model B")
    if method in (THEOREM1, THEOREM2, SUTHERLAND) and params.model != MODEL_A:
        raise IncompatibleMethodError(f"{method} needs model A")
    if method == SUTHERLAND and not is_partition(n):
        raise IncompatibleMethodError(f"sutherland needs a partition label, got {n}")


def _triangular_table(n: Label, params: ModelParams, method: str) -> CoeffTable:
    n = tuple(n)
    _check_method(n, params, method)
    steps = _STEPS[method]
    bound = tail_sums(n)
    entries: dict[Label, Fraction] = {n: Fraction(1)}
    labels = support(n, params, method)
    for m in labels:
        total = Fraction(0)
        for step, factor in steps(m, bound, params):
            upper = entries.get(_add(m, step.shift))
            if upper:
                total += factor * upper
        if total:
            entries[m] = total / (_gap_scale(method) * (weight(n) - weight(m)))
    logger.debug("%s table for %s: %d of %d support labels", method, n, len(entries), len(labels) + 1)
    return CoeffTable(target=n, entries=entries, method=method)


def alpha_table(n: Label, params: ModelParams) -> CoeffTable:
    return _triangular_table(n, params, THEOREM1)


def beta_table(n: Label, params: ModelParams) -> CoeffTable:
    return _triangular_table(n, params, THEOREM2)


def alphaB_table(n: Label, params: ModelParams) -> CoeffTable:
    return _triangular_table(n, params, BMODEL)


def _down_steps(label: Label, params: ModelParams) -> Iterator[tuple[Label, int, int, int]]:
    """(child, j, k, nu) for every step landing on label from a child with non-negative tails."""
    N = params.N
    up_j = 1 if params.model == MODEL_B else 2
    for j in range(N):
        child = list(label)
        child[j] -= up_j
        yield tuple(child), j, j, 0
    for j in range(N):
        for k in range(j + 1, N):
            nu = 1
            while True:
                at_j, at_k = (1 - nu, nu) if params.model == MODEL_B else (1 - nu, 1 + nu)
                child = list(label)
                child[j] -= at_j
                child[k] -= at_k
                child = tuple(child)
                if min(tail_sums(child)[j + 1 : k + 1]) < 0:
                    break
                yield child, j, k, nu
                nu += 1


def _g_factor(child: Label, j: int, k: int, nu: int, params: ModelParams) -> Fraction:
    lam = params.lam
    shifted = shifted_label(child, lam)
    if params.model == MODEL_B:
        if j == k:
            return -2 * (2 * (shifted[j] + params.mu - lam) + 1) * shifted[j]
        return 4 * lam * (lam - 1) * (2 * nu - 1)
    if j == k:
        return -shifted[j] * (shifted[j] + 1)
    return 2 * lam * (lam - 1) * nu


def alpha_closed(n: Label, m: Label, params: ModelParams) -> Fraction:
    """alpha_n(m) summed term by term over every chain of steps from m up to n."""
    n, m = tuple(n), tuple(m)
    scale = 4 if params.model == MODEL_B else 2
    if n == m:
        return Fraction(1)

    def descend(label: Label, product: Fraction) -> Fraction:
        total = Fraction(0)
        for child, j, k, nu in _down_steps(label, params):
            if weight(child) < weight(m) or min(tail_sums(child)) < 0:
                continue
            factor = product * _g_factor(child, j, k, nu, params) / (scale * (weight(n) - weight(child)))
            if not factor:
                continue
            if child == m:
                total += factor
            elif weight(child) > weight(m):
                total += descend(child, factor)
        return total

    return descend(n, Fraction(1))


def sutherland_table(n: Label, params: ModelParams, mode: str = RECURSION) -> CoeffTable:
    n = tuple(n)
    _check_method(n, params, SUTHERLAND)
    labels = support(n, params, SUTHERLAND)
    rows = {k: monomial_action(k, params).entries for k in [n] + labels}
    gap = {m: 2 * (weight(n) - weight(m)) for m in labels}
    entries: dict[Label, Fraction] = {n: Fraction(1)}
    if mode == RECURSION:
        for m in labels:
            total = sum((u * rows[k].get(m, 0) for k, u in entries.items()), Fraction(0))
            if total:
                entries[m] = total / gap[m]
    elif mode == EXPLICIT:
        collected: dict[Label, Fraction] = {}

        def descend(k: Label, product: Fraction):
            for m, b in rows[k].items():
                factor = product * b / gap[m]
                collected[m] = collected.get(m, Fraction(0)) + factor
                descend(m, factor)

        descend(n, Fraction(1))
        entries.update({m: value for m, value in collected.items() if value})
    else:
        raise ValueError(f"Unknown mode '{mode}'")
    return CoeffTable(target=n, entries=entries, method=SUTHERLAND)


def coeff_table(n: Label, params: ModelParams, method: str) -> CoeffTable:
    if method == SUTHERLAND:
        return sutherland_table(n, params)
    return _triangular_table(n, params, method)


def basis_function(m: Label, params: ModelParams, method: str) -> PolyElement:
    if method == SUTHERLAND:
        return msym(m)
    if method == THEOREM2:
        return fH_expand(m, params)
    return f_expand(m, params)


def assemble(table: CoeffTable, params: ModelParams) -> PolyElement:
    result = polyring(params.N, params.var).zero
    for m, coeff in sorted(table.entries.items(), reverse=True):
        result = result + basis_function(m, params, table.method) * to_qq(coeff)
    return result


def solve(n: Label, params: ModelParams, method: str) -> EigenRecord:
    n = tuple(n)
    _check_method(n, params, method)
    table = coeff_table(n, params, method)
    return EigenRecord(
        params=params,
        label=n,
        method=method,
        energy=energy(n, params),
        coeffs=table,
        poly=assemble(table, params),
    )


def default_methods(params: ModelParams) -> tuple[str, ...]:
    return (BMODEL,) if params.model == MODEL_B else (THEOREM1, THEOREM2, SUTHERLAND)
