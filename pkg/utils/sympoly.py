"""Exact multivariate polynomials, monomial symmetric functions and label orders.

Polynomials are elements of sympy sparse rings ``QQ[x1..xN]`` (or ``z1..zN``).
Monomial symmetric functions use the all-permutations normalization, so
``msym((1, 1)) == 2*x1*x2``.
"""

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, PolyRing
from sympy.utilities.iterables import multiset_permutations, partitions
from constants import DOMINANCE, MONOMIAL_BASIS, MSYM_BASIS, TAIL, X_VAR
from errors import LabelError, NotDivisibleError, NotInSpanError
from utils.exact import to_fraction, to_qq, UNI_RING

Label = tuple[int, ...]


@lru_cache(maxsize=None)
def polyring(nvars: int, var: str = X_VAR) -> PolyRing:
    return PolyRing(",".join(f"{var}{i}" for i in range(1, nvars + 1)), QQ)


def sort_desc(label: Label) -> Label:
    return tuple(sorted(label, reverse=True))


def is_partition(label: Label) -> bool:
    return all(part >= 0 for part in label) and tuple(label) == sort_desc(label)


def weight(label: Label) -> int:
    return sum(label)


def tail_sums(label: Label) -> Label:
    sums, running = [], 0
    for entry in reversed(label):
        running += entry
        sums.append(running)
    return tuple(reversed(sums))


def prefix_sums(label: Label) -> Label:
    sums, running = [], 0
    for entry in label:
        running += entry
        sums.append(running)
    return tuple(sums)


def stabilizer_order(label: Label) -> int:
    counts = defaultdict(int)
    for entry in label:
        counts[entry] += 1
    return prod(factorial(count) for count in counts.values())


def msym(a: Label, var: str = X_VAR) -> PolyElement:
    if any(entry < 0 for entry in a):
        raise LabelError(f"Monomial symmetric function needs non-negative entries, got {a}")
    R = polyring(len(a), var)
    mult = QQ(stabilizer_order(a))
    return R.from_dict({tuple(perm): mult for perm in multiset_permutations(list(a))})


def permute(p: PolyElement, perm: tuple[int, ...]) -> PolyElement:
    """Send variable i to variable perm[i]."""
    terms = {}
    for monom, coeff in p.items():
        image = [0] * len(monom)
        for i, exp in enumerate(monom):
            image[perm[i]] = exp
        terms[tuple(image)] = coeff
    return p.ring.from_dict(terms) if terms else p.ring.zero


def is_symmetric(p: PolyElement) -> bool:
    nvars = p.ring.ngens
    for i in range(nvars - 1):
        swap = list(range(nvars))
        swap[i], swap[i + 1] = i + 1, i
        if permute(p, tuple(swap)) != p:
            return False
    return True


def to_msym(p: PolyElement) -> dict[Label, Fraction]:
    if not is_symmetric(p):
        raise NotInSpanError("Polynomial is not symmetric")
    return {
        monom: to_fraction(coeff) / stabilizer_order(monom)
        for monom, coeff in p.items()
        if is_partition(monom)
    }


def from_msym(terms: dict[Label, Fraction], N: int, var: str = X_VAR) -> PolyElement:
    result = polyring(N, var).zero
    for partition, coeff in terms.items():
        result = result + msym(partition, var) * to_qq(coeff)
    return result


def divide_by_difference(q: PolyElement, j: int, k: int) -> PolyElement:
    """Exact quotient q / (x_j - x_k), by synthetic division in x_j over x_k."""
    if j == k:
        raise ValueError("Indices must differ")
    R = q.ring
    xj, xk = R.gens[j], R.gens[k]
    by_degree = defaultdict(dict)
    for monom, coeff in q.items():
        by_degree[monom[j]][monom[:j] + (0,) + monom[j + 1 :]] = coeff
    if not by_degree:
        return R.zero

    def coefficient(degree: int) -> PolyElement:
        terms = by_degree.get(degree)
        return R.from_dict(terms) if terms else R.zero

    quotient, carry = R.zero, R.zero
    for degree in range(max(by_degree), 0, -1):
        carry = coefficient(degree) + xk * carry
        quotient = quotient + carry * xj ** (degree - 1)
    if coefficient(0) + xk * carry:
        raise NotDivisibleError(j, k)
    return quotient


def compare(order: str, m: Label, n: Label, strict: bool = False) -> bool:
    if len(m) != len(n):
        raise LabelError(f"Labels {m} and {n} have different lengths")
    if order == DOMINANCE:
        sums_m, sums_n = prefix_sums(m), prefix_sums(n)
        below = all(a <= b for a, b in zip(sums_m, sums_n))
        return below and (not strict or weight(m) != weight(n))
    if order == TAIL:
        sums_m, sums_n = tail_sums(m), tail_sums(n)
        below = all(a <= b for a, b in zip(sums_m, sums_n))
        return below and (not strict or tuple(m) != tuple(n))
    raise ValueError(f"Unknown order '{order}'")


def partitions_of(total: int, N: int) -> list[Label]:
    """Partitions of total with at most N parts, padded to length N, lexicographically descending."""
    if total < 0:
        return []
    found = []
    for parts in partitions(total, m=N):
        label = sorted((part for part, mult in parts.items() for _ in range(mult)), reverse=True)
        found.append(tuple(label) + (0,) * (N - len(label)))
    return sorted(found, reverse=True)


def labels_with_tails(bounds: Label, total: int | None = None) -> list[Label]:
    """Labels whose tail sums lie in [0, bounds[j]], optionally with a fixed weight."""
    N = len(bounds)
    found = []

    def extend(j: int, tails: tuple[int, ...]):
        if j < 0:
            padded = tails + (0,)
            found.append(tuple(padded[i] - padded[i + 1] for i in range(N)))
            return
        if j == 0 and total is not None:
            choices = (total,) if 0 <= total <= bounds[0] else ()
        else:
            choices = range(bounds[j] + 1)
        for tail in choices:
            extend(j - 1, (tail,) + tails)

    extend(N - 1, ())
    return sorted(found, key=lambda label: (weight(label), label))


def labels_up_to(max_weight: int, N: int) -> list[Label]:
    return labels_with_tails((max_weight,) * N)


def weak_compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def leading_partition(p: PolyElement) -> Label | None:
    if not p:
        return None
    return max(((weight(m), sort_desc(m)) for m in p.keys()))[1]


def proportional(p: PolyElement, q: PolyElement) -> bool:
    if not p or not q:
        return not p and not q
    lead = p.leading_expv()
    if lead not in q:
        return False
    return p * q[lead] == q * p[lead]


def ratio(p: PolyElement, q: PolyElement) -> Fraction | None:
    """r with p == r*q, if one exists."""
    if not q:
        return Fraction(0) if not p else None
    if not p:
        return Fraction(0)
    if not proportional(p, q):
        return None
    lead = q.leading_expv()
    return to_fraction(p.get(lead, QQ.zero)) / to_fraction(q[lead])


def normalize_leading(p: PolyElement) -> PolyElement:
    lead = leading_partition(p)
    if lead is None:
        return p
    return p * (QQ(stabilizer_order(lead)) / p[lead])


def to_univariate(p: PolyElement) -> PolyElement:
    if p.ring.ngens != 1:
        raise LabelError("Only one-variable polynomials convert to univariate form")
    return UNI_RING.from_dict(dict(p)) if p else UNI_RING.zero


def poly_to_json(p: PolyElement) -> dict:
    if is_symmetric(p):
        terms = sorted(to_msym(p).items(), reverse=True)
        return {
            "basis": MSYM_BASIS,
            "terms": [{"partition": list(k), "coeff": str(c)} for k, c in terms],
        }
    terms = sorted(p.items(), reverse=True)
    return {
        "basis": MONOMIAL_BASIS,
        "terms": [{"exponents": list(e), "coeff": str(to_fraction(c))} for e, c in terms],
    }


def poly_from_json(doc: dict, N: int, var: str = X_VAR) -> PolyElement:
    if doc["basis"] == MSYM_BASIS:
        terms = {tuple(t["partition"]): to_fraction(t["coeff"]) for t in doc["terms"]}
        return from_msym(terms, N, var)
    if doc["basis"] == MONOMIAL_BASIS:
        R = polyring(N, var)
        terms = {tuple(t["exponents"]): to_qq(t["coeff"]) for t in doc["terms"]}
        return R.from_dict(terms) if terms else R.zero
    raise ValueError(f"Unknown basis '{doc['basis']}'")
