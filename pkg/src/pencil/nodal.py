"""Real-root isolation and crack-admissibility decisions.

Root counting uses exact Sturm sequences over the integers (primitive
pseudo-remainders, so only positive rescalings ever touch the chain signs).
Admissibility of a slope tuple at expansion order l is a nullspace question
for the matrix of eigenfunction values at the slopes: exact over the
rationals, SVD-thresholded for floating input.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .linalg import rational_kernel
from .pencils import Eigenpair, quadratic_eigenfunction, quartic_eigenfunction
from .polyring import (
    RatPoly,
    _int_diff,
    _int_primitive,
    _signed_prem,
    integer_coefficients,
    poly_gcd,
    square_free_decomposition,
    square_free_part,
)

__all__ = [
    "RootSet",
    "CrackConfig",
    "AdmissibilityVerdict",
    "EnumeratedConfig",
    "isolate_real_roots",
    "count_real_roots",
    "transversality_check",
    "check_admissibility_laplace",
    "check_admissibility_bilaplace",
    "enumerate_admissible",
]


# ---------------------------------------------------------------------------
# Sturm sequences over the integers


def _int_eval_sign(coeffs: Sequence[int], point: Fraction) -> int:
    """Sign of p(point) for integer coefficients: integer Horner on b^n p(a/b)."""
    a, b = point.numerator, point.denominator
    acc = 0
    bp = 1
    for c in reversed(coeffs):
        acc = acc * a + c * bp
        bp *= b
    return (acc > 0) - (acc < 0)


def _sturm_chain(coeffs: list[int]) -> list[list[int]]:
    """Sturm chain of a square-free integer polynomial, primitive at each step."""
    chain = [_int_primitive(list(coeffs))]
    d = _int_primitive(_int_diff(chain[0]))
    if d:
        chain.append(d)
    while len(chain[-1]) > 1:
        rem = _signed_prem(chain[-2], chain[-1])
        if not rem:
            break
        chain.append([-c for c in rem])
    return chain


def _sign_variations(signs: Iterable[int]) -> int:
    out = 0
    prev = 0
    for s in signs:
        if s == 0:
            continue
        if prev != 0 and s != prev:
            out += 1
        prev = s
    return out


def _variations_at(chain: list[list[int]], point: Fraction) -> int:
    return _sign_variations(_int_eval_sign(p, point) for p in chain)


def _variations_at_infinity(chain: list[list[int]], negative: bool) -> int:
    signs = []
    for p in chain:
        lead = (p[-1] > 0) - (p[-1] < 0)
        if negative and (len(p) - 1) % 2:
            lead = -lead
        signs.append(lead)
    return _sign_variations(signs)


def count_real_roots(p: RatPoly) -> int:
    """Exact number of distinct real roots of p (Sturm's theorem)."""
    if p.is_zero():
        raise ValueError("the zero polynomial has no root count")
    if p.degree == 0:
        return 0
    sq = square_free_part(p)
    if sq.degree == 0:
        return 0
    chain = _sturm_chain(integer_coefficients(sq))
    return _variations_at_infinity(chain, True) - _variations_at_infinity(chain, False)


def _root_bound(coeffs: Sequence[int]) -> Fraction:
    """Cauchy bound: strictly larger than the absolute value of every root."""
    lead = abs(coeffs[-1])
    biggest = max(abs(c) for c in coeffs[:-1]) if len(coeffs) > 1 else 0
    return Fraction(biggest, lead) + 2


def _count_open(chain: list[list[int]], a: Fraction, b: Fraction) -> int:
    # valid only when neither endpoint is a root of chain[0]
    return _variations_at(chain, a) - _variations_at(chain, b)


def _isolate_square_free(coeffs: list[int]) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals each holding exactly one real root.

    Exact rational roots are returned as degenerate [r, r] intervals.
    """
    chain = _sturm_chain(coeffs)
    bound = _root_bound(coeffs)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound, _count_open(chain, -bound, bound))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if _int_eval_sign(coeffs, mid) == 0:
            # exact rational root at mid; carve out a root-free margin around it
            delta = (hi - lo) / 4
            while (
                _int_eval_sign(coeffs, mid - delta) == 0
                or _int_eval_sign(coeffs, mid + delta) == 0
                or _count_open(chain, mid - delta, mid + delta) != 1
            ):
                delta /= 2
            out.append((mid, mid))
            stack.append((lo, mid - delta, _count_open(chain, lo, mid - delta)))
            stack.append((mid + delta, hi, _count_open(chain, mid + delta, hi)))
        else:
            stack.append((lo, mid, _count_open(chain, lo, mid)))
            stack.append((mid, hi, _count_open(chain, mid, hi)))
    return sorted(out)


def _refine_root(coeffs: list[int], lo: Fraction, hi: Fraction, tol: float) -> float:
    """Bisect an isolating interval down to tol and return a float root."""
    if lo == hi:
        return float(lo)
    slo = _int_eval_sign(coeffs, lo)
    width_goal = Fraction(tol if tol > 0 else 1e-12) / 8
    scale = max(abs(lo), abs(hi), Fraction(1))
    while hi - lo > width_goal * scale:
        mid = (lo + hi) / 2
        smid = _int_eval_sign(coeffs, mid)
        if smid == 0:
            return float(mid)
        if smid == slo:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)


@dataclass(frozen=True)
class RootSet:
    """All real roots of a polynomial with exact isolation and float refinement."""

    poly: RatPoly
    isolating_intervals: tuple[tuple[Fraction, Fraction], ...]
    refined_roots: tuple[float, ...]
    multiplicities: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.refined_roots)


def isolate_real_roots(p: RatPoly, tol: float = 1e-12) -> RootSet:
    """Isolate and refine every real root of p with exact multiplicities."""
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    if p.degree == 0:
        return RootSet(p, (), (), ())
    factors = square_free_decomposition(p)
    sq = square_free_part(p)
    sq_int = integer_coefficients(sq)
    intervals = _isolate_square_free(sq_int)
    factor_data = [
        (integer_coefficients(f), _sturm_chain(integer_coefficients(square_free_part(f))), mult)
        for f, mult in factors
    ]
    mults = []
    for lo, hi in intervals:
        assigned = 0
        for f_int, f_chain, mult in factor_data:
            if lo == hi:
                if _int_eval_sign(f_int, lo) == 0:
                    assigned = mult
                    break
            elif _count_open(f_chain, lo, hi) == 1:
                assigned = mult
                break
        if assigned == 0:
            raise RuntimeError("internal error: isolated root not matched to a square-free factor")
        mults.append(assigned)
    roots = tuple(_refine_root(sq_int, lo, hi, tol) for lo, hi in intervals)
    return RootSet(p, tuple(intervals), roots, tuple(mults))


def transversality_check(pair: Eigenpair) -> bool:
    """True iff the eigenfunction has deg-many real roots, all simple."""
    if pair.order != "quadratic":
        raise ValueError("transversality is asserted for quadratic eigenpairs")
    p = pair.poly
    if poly_gcd(p, p.diff()).degree > 0:
        return False
    return count_real_roots(p) == p.degree


# ---------------------------------------------------------------------------
# crack configurations and admissibility


def _is_exact(value) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


@dataclass(frozen=True)
class CrackConfig:
    """Ordered crack slopes alpha_1 < ... < alpha_m."""

    alphas: tuple

    def __post_init__(self):
        alphas = tuple(self.alphas)
        object.__setattr__(self, "alphas", alphas)
        if not alphas:
            raise ValueError("a crack configuration needs at least one slope")
        for a, b in zip(alphas, alphas[1:]):
            if not a < b:
                raise ValueError("crack slopes must be strictly increasing")

    @property
    def m(self) -> int:
        return len(self.alphas)

    @property
    def exact(self) -> bool:
        return all(_is_exact(a) for a in self.alphas)


@dataclass(frozen=True)
class AdmissibilityVerdict:
    """Outcome of the order-l admissibility test for one crack configuration."""

    l: int
    admissible: bool
    combo_coefficients: tuple | None
    nullspace_basis: tuple | None
    full_zero_set: RootSet | None
    consecutive_flag: bool | None
    exact: bool
    rank: int
    families: tuple[int, ...]


def _eigenfunctions_for_order(equation: str, l: int) -> list[tuple[int, RatPoly]]:
    """Family-tagged eigenfunction polynomials entering the order-l combination.

    Degrees follow the shifted convention: families 1..4 contribute degrees
    l, l-1, l-2, l-3; families whose degree would be negative are absent.
    """
    if equation == "laplace":
        fams = [(1, l), (2, l - 1)]
    elif equation == "bilaplace":
        fams = [(1, l), (2, l - 1), (3, l - 2), (4, l - 3)]
    else:
        raise ValueError("equation must be 'laplace' or 'bilaplace'")
    out = []
    for family, degree in fams:
        if degree < (1 if family == 1 else 0):
            continue
        if equation == "laplace":
            out.append((family, quadratic_eigenfunction(degree, family).poly))
        else:
            out.append((family, quartic_eigenfunction(degree, family).poly))
    return out


def _normalize_max_entry(vec: Sequence) -> tuple:
    biggest = max(vec, key=abs)
    return tuple(v / biggest for v in vec)


def _combination(polys: Sequence[RatPoly], coeffs: Sequence) -> RatPoly:
    combo = RatPoly.zero()
    for c, p in zip(coeffs, polys):
        frac = c if isinstance(c, (int, Fraction)) else Fraction(float(c))
        combo = combo + p * frac
    return combo


def _match_consecutive(alphas: Sequence, roots: Sequence[float], tol: float) -> bool | None:
    """Whether the alphas occupy consecutive positions in the ordered root list."""
    indices = []
    for a in alphas:
        target = float(a)
        close = [i for i, r in enumerate(roots) if abs(r - target) <= tol * max(1.0, abs(target))]
        if len(close) != 1:
            return None
        indices.append(close[0])
    indices.sort()
    return all(b - a == 1 for a, b in zip(indices, indices[1:]))


def _verdict_for_matrix(
    config: CrackConfig,
    l: int,
    families: tuple[int, ...],
    polys: list[RatPoly],
    tol: float,
) -> AdmissibilityVerdict:
    if config.exact:
        matrix = [[p.eval(Fraction(a)) for p in polys] for a in config.alphas]
        kernel = rational_kernel(matrix, ncols=len(polys))
        rank = len(polys) - len(kernel)
        admissible = bool(kernel)
        basis = tuple(_normalize_max_entry(v) for v in kernel) if kernel else None
    else:
        matrix = np.array([[p.eval_float(float(a)) for p in polys] for a in config.alphas])
        u, sing, vt = np.linalg.svd(matrix)
        cutoff = tol * (sing[0] if sing.size and sing[0] > 0 else 1.0)
        null_rows = [vt[i] for i in range(len(polys)) if i >= sing.size or sing[i] < cutoff]
        rank = len(polys) - len(null_rows)
        admissible = bool(null_rows)
        basis = tuple(_normalize_max_entry(tuple(float(x) for x in row)) for row in null_rows) if null_rows else None

    combo = basis[0] if basis else None
    zero_set = None
    consecutive = None
    if combo is not None:
        combo_poly = _combination(polys, combo)
        if not combo_poly.is_zero() and combo_poly.degree > 0:
            zero_set = isolate_real_roots(combo_poly)
            consecutive = _match_consecutive(
                config.alphas, zero_set.refined_roots, max(tol, 1e-9)
            )
    return AdmissibilityVerdict(
        l=l,
        admissible=admissible,
        combo_coefficients=combo,
        nullspace_basis=basis,
        full_zero_set=zero_set,
        consecutive_flag=consecutive,
        exact=config.exact,
        rank=rank,
        families=families,
    )


def _check_admissibility(
    equation: str, config: CrackConfig, l_range: tuple[int, int], tol: float
) -> list[AdmissibilityVerdict]:
    lo, hi = l_range
    if lo > hi:
        raise ValueError("empty l range")
    if lo < max(config.m, 1):
        raise ValueError(f"l range must start at or above max(m, 1) = {max(config.m, 1)}")
    out = []
    for l in range(lo, hi + 1):
        tagged = _eigenfunctions_for_order(equation, l)
        families = tuple(f for f, _ in tagged)
        polys = [p for _, p in tagged]
        out.append(_verdict_for_matrix(config, l, families, polys, tol))
    return out


def check_admissibility_laplace(
    config: CrackConfig, l_range: tuple[int, int], tol: float = 1e-9
) -> list[AdmissibilityVerdict]:
    """Admissibility of the crack slopes against two-family combinations."""
    return _check_admissibility("laplace", config, l_range, tol)


def check_admissibility_bilaplace(
    config: CrackConfig, l_range: tuple[int, int], tol: float = 1e-9
) -> list[AdmissibilityVerdict]:
    """Admissibility against four-family combinations (shifted degrees)."""
    return _check_admissibility("bilaplace", config, l_range, tol)


# ---------------------------------------------------------------------------
# enumeration of admissible configurations


@dataclass(frozen=True)
class EnumeratedConfig:
    """An admissible crack configuration tagged with its generating order and ratio.

    ratio is the second-family weight relative to the first; None marks the
    projective endpoint where the first-family coefficient vanishes.
    """

    config: CrackConfig
    l: int
    ratio: float | None


def enumerate_admissible(
    m: int, l: int, ratios: Sequence, include_endpoint: bool = True
) -> list[EnumeratedConfig]:
    """Emit every m-subset of consecutive roots of the sampled combinations.

    The combination at ratio r is psi_{l,1} + r * psi_{l-1,2}; the endpoint
    combination (first coefficient zero) is included separately because the
    ratio parameterization misses it.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if l < m:
        raise ValueError("need l >= m so the combination can have m zeros")
    base = quadratic_eigenfunction(l, 1).poly
    second = quadratic_eigenfunction(l - 1, 2).poly
    jobs: list[tuple[float | None, RatPoly]] = []
    for r in ratios:
        frac = r if isinstance(r, (int, Fraction)) else Fraction(float(r))
        jobs.append((float(r), base + second * frac))
    if include_endpoint:
        jobs.append((None, second))
    out = []
    for ratio, combo in jobs:
        if combo.is_zero() or combo.degree < 1:
            continue
        roots = isolate_real_roots(combo).refined_roots
        for start in range(0, len(roots) - m + 1):
            window = roots[start : start + m]
            out.append(EnumeratedConfig(CrackConfig(tuple(window)), l, ratio))
    return out
