import logging
from fractions import Fraction
from functools import lru_cache
from sympy.polys.rings import PolyElement
from constants import HERMITE, MODEL_A, MODEL_B
from errors import IncompatibleMethodError, LabelError, NotInSpanError
from models.base import ActionRow, ModelParams
from utils.exact import classical_poly, to_fraction, to_qq
from utils.sympoly import (
    divide_by_difference,
    is_partition,
    msym,
    polyring,
    sort_desc,
    to_msym,
    weight,
)

logger = logging.getLogger(__name__)


def _require(params: ModelParams, model: str):
    if params.model != model:
        raise IncompatibleMethodError(f"Operator needs model {model}, got {params.model}")


def apply_reduced_A(p: PolyElement, params: ModelParams) -> PolyElement:
    _require(params, MODEL_A)
    R = p.ring
    firsts = [p.diff(x) for x in R.gens]
    result = R.zero
    for x, first in zip(R.gens, firsts):
        result = result - first.diff(x) + x * first * 2
    coupling = to_qq(params.lam) * 2
    for j in range(R.ngens):
        for k in range(j + 1, R.ngens):
            result = result - divide_by_difference(firsts[j] - firsts[k], j, k) * coupling
    return result


def apply_reduced_B(q: PolyElement, params: ModelParams) -> PolyElement:
    _require(params, MODEL_B)
    R = q.ring
    firsts = [q.diff(z) for z in R.gens]
    drift = to_qq(params.mu) * 4 + 2
    result = R.zero
    for z, first in zip(R.gens, firsts):
        result = result - z * first.diff(z) * 4 + z * first * 4 - first * drift
    euler = [z * first for z, first in zip(R.gens, firsts)]
    coupling = to_qq(params.lam) * 8
    for j in range(R.ngens):
        for k in range(j + 1, R.ngens):
            result = result - divide_by_difference(euler[j] - euler[k], j, k) * coupling
    return result


def apply_reduced(p: PolyElement, params: ModelParams) -> PolyElement:
    if params.model == MODEL_B:
        return apply_reduced_B(p, params)
    return apply_reduced_A(p, params)


@lru_cache(maxsize=None)
def monomial_action(n: tuple[int, ...], params: ModelParams) -> ActionRow:
    """Lower-order part of the reduced operator applied to msym(n), in the M-basis."""
    _require(params, MODEL_A)
    if not is_partition(n):
        raise LabelError(f"{n} is not a partition")
    p = msym(n)
    rest = apply_reduced_A(p, params) - p * (2 * weight(n))
    return ActionRow(source=n, entries=to_msym(rest))


def monomial_action_printed(n: tuple[int, ...], params: ModelParams) -> ActionRow:
    """Term-by-term transcription of the closed monomial action formula."""
    _require(params, MODEL_A)
    entries: dict[tuple[int, ...], Fraction] = {}

    def add(label: list[int], coeff: Fraction):
        if coeff:
            key = sort_desc(tuple(label))
            entries[key] = entries.get(key, Fraction(0)) + coeff

    N = len(n)
    for j in range(N):
        if n[j] >= 2:
            shifted = list(n)
            shifted[j] -= 2
            add(shifted, Fraction(-n[j] * (n[j] - 1)))
    for j in range(N):
        for k in range(j + 1, N):
            gap = n[j] - n[k]
            for nu in range(gap // 2 + 1):
                factor = (2 - (2 * nu == gap)) * ((nu != 0) * n[j] - n[k])
                shifted = list(n)
                shifted[j] -= nu + 1
                shifted[k] += nu - 1
                add(shifted, -params.lam * factor)
    return ActionRow(source=n, entries={k: v for k, v in entries.items() if v})


def action_deviations(
    n: tuple[int, ...], params: ModelParams
) -> dict[tuple[int, ...], tuple[Fraction, Fraction]]:
    """Entries where the printed formula differs from direct application, as (printed, direct)."""
    printed = monomial_action_printed(n, params).entries
    direct = monomial_action(n, params).entries
    deviations = {}
    for label in sorted(set(printed) | set(direct), reverse=True):
        pair = (printed.get(label, Fraction(0)), direct.get(label, Fraction(0)))
        if pair[0] != pair[1]:
            deviations[label] = pair
    if deviations:
        logger.debug("Printed action of %s deviates at %s", n, sorted(deviations))
    return deviations


def pair_identity_monomial(n: int, m: int) -> PolyElement:
    """Closed form of (d/dx - d/dy)(x^n y^m + y^n x^m) / (x - y) for n >= m."""
    R = polyring(2)
    x, y = R.gens
    result = R.zero
    for k in range(1, n - m):
        result = result + x ** (n - 1 - k) * y ** (m - 1 + k) * (n - m)
    if m:
        result = result - (x ** (n - 1) * y ** (m - 1) + y ** (n - 1) * x ** (m - 1)) * m
    return result


def symmetrized_hermite(a: int, b: int) -> PolyElement:
    R = polyring(2)
    h_a, h_b = classical_poly(HERMITE, a), classical_poly(HERMITE, b)

    def embed(q: PolyElement, slot: int) -> PolyElement:
        return R.from_dict({((e, 0) if slot == 0 else (0, e)): c for (e,), c in q.items()})

    return embed(h_a, 0) * embed(h_b, 1) + embed(h_a, 1) * embed(h_b, 0)


def pair_coeffs_hermite(n: int, m: int) -> dict[tuple[int, int], Fraction]:
    if n < m:
        raise ValueError("pair_coeffs_hermite needs n >= m")
    R = polyring(2)
    x, y = R.gens
    sym = symmetrized_hermite(n, m)
    rest = divide_by_difference(sym.diff(x) - sym.diff(y), 0, 1)
    coeffs = {}
    while rest:
        a, b = max(rest.keys(), key=lambda e: (sum(e), e))
        if a + b > n + m - 2 or (a + b - n - m) % 2:
            raise NotInSpanError(f"Term x^{a} y^{b} is outside the Hermite pair span of ({n}, {m})")
        lead = 2 ** (a + b) * (2 if a == b else 1)
        coeff = to_fraction(rest[(a, b)]) / lead
        coeffs[(a, b)] = coeff
        rest = rest - symmetrized_hermite(a, b) * to_qq(coeff)
    return coeffs
