import logging
from fractions import Fraction
from math import factorial
from sympy.polys.rings import PolyElement
from constants import (
    BMODEL,
    EQUAL,
    HERMITE,
    LAGUERRE,
    MODEL_A,
    MODEL_B,
    PROPORTIONAL,
    SUTHERLAND,
    THEOREM1,
    THEOREM2,
    UNRELATED,
)
from errors import LabelError
from models.base import EigenRecord, ModelParams, VerifyCheck, VerifyReport
from services.cbasis import f_expand, schur
from services.hamops import apply_reduced
from services.spectra import assemble, energy, ground_energy, solve, sutherland_table
from utils.exact import classical_poly, derivative, format_rational, to_qq
from utils.sympoly import (
    is_partition,
    leading_partition,
    normalize_leading,
    partitions_of,
    proportional,
    ratio,
    to_msym,
    to_univariate,
    weight,
)

logger = logging.getLogger(__name__)

Label = tuple[int, ...]


def _label_str(n: Label) -> str:
    return "(" + ",".join(str(entry) for entry in n) + ")"


def _subject(rec: EigenRecord) -> str:
    return f"{rec.method} {_label_str(rec.label)}"


def _check(name: str, passed: bool, witness=None, detail: str | None = None) -> VerifyCheck:
    return VerifyCheck(name=name, passed=passed, witness=None if passed else witness, detail=detail)


def residual(rec: EigenRecord) -> PolyElement:
    shift = rec.energy - ground_energy(rec.params)
    return apply_reduced(rec.poly, rec.params) - rec.poly * to_qq(shift)


def verify_eigen(rec: EigenRecord) -> VerifyReport:
    rest = residual(rec)
    expected = energy(rec.label, rec.params)
    checks = [
        _check("eigen-equation", not rest, witness=rest),
        _check(
            "energy",
            rec.energy == expected,
            witness=format_rational(rec.energy),
            detail=f"expected {format_rational(expected)}",
        ),
    ]
    report = VerifyReport(subject=_subject(rec), checks=checks)
    if not report.passed:
        logger.warning("Eigen check failed for %s", report.subject)
    return report


def verify_reductions(params: ModelParams, max_n: int) -> VerifyReport:
    if params.N != 1:
        raise LabelError("Classical reductions need N = 1")
    checks = []
    for n in range(max_n + 1):
        if params.model == MODEL_B:
            rec = solve((n,), params, BMODEL)
            expected = classical_poly(LAGUERRE, n, params.mu - Fraction(1, 2))
            name = f"laguerre {n}"
        else:
            rec = solve((n,), params, THEOREM1)
            expected = classical_poly(HERMITE, n)
            name = f"hermite {n}"
        poly = to_univariate(rec.poly)
        checks.append(_check(name, proportional(poly, expected), witness=poly))
    lam = params.lam
    if lam.denominator == 1 and lam >= 3:
        order = int(lam) - 1
        for n in range(max_n + 1):
            lhs = classical_poly(HERMITE, n) * (2**order * factorial(n + order))
            rhs = derivative(classical_poly(HERMITE, n + order), order) * factorial(n)
            checks.append(_check(f"hermite derivative {n}+{order}", lhs == rhs, witness=lhs - rhs))
        if params.mu is not None:
            alpha = params.mu - Fraction(1, 2)
            for n in range(max_n + 1):
                lhs = classical_poly(LAGUERRE, n, alpha)
                rhs = derivative(classical_poly(LAGUERRE, n + order, alpha - order), order) * (-1) ** order
                checks.append(_check(f"laguerre derivative {n}+{order}", lhs == rhs, witness=lhs - rhs))
    return VerifyReport(subject=f"reductions N=1 model {params.model}", checks=checks)


def verify_schur(N: int, max_weight: int) -> VerifyReport:
    params = ModelParams(model=MODEL_A, N=N, lam=1)
    checks = []
    for w in range(max_weight + 1):
        for n in partitions_of(w, N):
            f = f_expand(n, params)
            s = schur(n, N)
            if f == s:
                checks.append(_check(f"schur {_label_str(n)}", True, detail="sign=+1"))
            elif f == -s:
                checks.append(_check(f"schur {_label_str(n)}", True, detail="sign=-1"))
            else:
                checks.append(_check(f"schur {_label_str(n)}", False, witness=f - s))
    return VerifyReport(subject=f"schur N={N}", checks=checks)


def sutherland_span(poly: PolyElement, n: Label, params: ModelParams) -> tuple[dict[Label, Fraction], PolyElement]:
    """Coefficients c_k with poly = sum c_k P^sutherland_k over partitions of weight |n|, and the remainder."""
    top = {k: c for k, c in to_msym(poly).items() if weight(k) == weight(n)}
    rest = poly
    for k, coeff in sorted(top.items(), reverse=True):
        rest = rest - assemble(sutherland_table(k, params), params) * to_qq(coeff)
    return top, rest


def _relation(p: PolyElement, q: PolyElement) -> str:
    if p == q:
        return EQUAL
    if proportional(p, q):
        return PROPORTIONAL
    return UNRELATED


def cross_check(n: Label, params: ModelParams) -> VerifyReport:
    n = tuple(n)
    checks = []
    if params.model == MODEL_B:
        rec = solve(n, params, BMODEL)
        checks.extend(verify_eigen(rec).checks)
        return VerifyReport(subject=f"cross-check {_label_str(n)}", checks=checks)
    first = solve(n, params, THEOREM1)
    second = solve(n, params, THEOREM2)
    relation = _relation(first.poly, second.poly)
    if params.N <= 2:
        checks.append(_check("theorem1 == theorem2", relation == EQUAL, witness=first.poly - second.poly))
    else:
        checks.append(_check("theorem1 ~ theorem2", True, detail=relation))
    coeffs, rest = sutherland_span(first.poly, n, params)
    detail = ", ".join(f"{_label_str(k)}: {format_rational(c)}" for k, c in sorted(coeffs.items(), reverse=True))
    checks.append(_check("theorem1 in sutherland span", not rest, witness=rest, detail=detail))
    if is_partition(n):
        third = solve(n, params, SUTHERLAND)
        leads = leading_partition(third.poly) == n and normalize_leading(third.poly) == third.poly
        checks.append(_check("sutherland leads with M" + _label_str(n), leads))
        checks.append(_check("theorem1 ~ sutherland", True, detail=_relation(first.poly, third.poly)))
    return VerifyReport(subject=f"cross-check {_label_str(n)}", checks=checks)


def relate_labels(m: Label, n: Label, params: ModelParams, method: str = THEOREM1) -> VerifyReport:
    """Record how the eigenfunctions of two labels relate, without presuming a law."""
    first, second = solve(m, params, method), solve(n, params, method)
    same_energy = first.energy == second.energy
    factor = ratio(second.poly, first.poly)
    detail = UNRELATED if factor is None else f"P{_label_str(n)} = {format_rational(factor)} * P{_label_str(m)}"
    checks = [
        _check("same energy", same_energy, witness=format_rational(second.energy - first.energy)),
        _check("relation", True, detail=detail),
    ]
    return VerifyReport(subject=f"{_label_str(m)} vs {_label_str(n)}", checks=checks)


def verify_suite(params: ModelParams, max_weight: int) -> list[VerifyReport]:
    reports = []
    methods = (BMODEL,) if params.model == MODEL_B else (THEOREM1, THEOREM2, SUTHERLAND)
    for w in range(max_weight + 1):
        for n in partitions_of(w, params.N):
            for method in methods:
                reports.append(verify_eigen(solve(n, params, method)))
            if params.model == MODEL_A:
                reports.append(cross_check(n, params))
    if params.N == 1:
        reports.append(verify_reductions(params, max_weight))
    if params.model == MODEL_A and params.lam == 1:
        reports.append(verify_schur(params.N, max_weight))
    failed = sum(not report.passed for report in reports)
    logger.info("Verified %d subjects, %d failed", len(reports), failed)
    return reports
