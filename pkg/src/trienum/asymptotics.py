"""Dominant singularities and coefficient asymptotics.

Root isolation is exact: Sturm sequences over the integers and bisection on
dyadic rationals.  Floating point (mpmath) enters only when fitting
``a_n ~ lambda * n^(-5/2) * rho^(-n)`` to computed coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

import mpmath

from .algebraic import factor_univariate
from .series import PolyX

__all__ = [
    "AsymptoticFit",
    "InsufficientOrder",
    "NoPositiveRoot",
    "RootInterval",
    "ToleranceExceeded",
    "count_roots",
    "growth_constant",
    "isolate_smallest_positive_root",
    "richardson",
    "smallest_positive_root",
    "star_ratio_check",
    "sturm_sequence",
]

DEFAULT_PRECISION = Fraction(1, 2**60)
DEFAULT_DEPTH = 3


class NoPositiveRoot(ValueError):
    pass


class InsufficientOrder(ValueError):
    pass


class ToleranceExceeded(AssertionError):
    pass


@dataclass(frozen=True)
class RootInterval:
    """``poly`` has exactly one real root in ``[low, high]``.

    ``exact`` is set when the root is rational (then it is also the midpoint).
    """

    low: Fraction
    high: Fraction
    poly: PolyX
    exact: Fraction | None = None

    def __post_init__(self):
        if self.exact is None and not self.low < self.high:
            raise ValueError("empty root interval")

    @property
    def width(self) -> Fraction:
        return self.high - self.low

    @property
    def mid(self) -> Fraction:
        return self.exact if self.exact is not None else (self.low + self.high) / 2

    def value(self, digits: int = 30) -> mpmath.mpf:
        with mpmath.workdps(digits):
            return mpmath.mpf(self.mid.numerator) / self.mid.denominator

    def inverse_bounds(self) -> tuple[Fraction, Fraction]:
        if self.exact is not None:
            return 1 / self.exact, 1 / self.exact
        return 1 / self.high, 1 / self.low

    def contains(self, x) -> bool:
        return self.low <= Fraction(x) <= self.high


# -- Sturm machinery -------------------------------------------------------------


def _eval_sign(p: PolyX, x: Fraction) -> int:
    num, den = x.numerator, x.denominator
    d = p.degree
    acc = 0
    for i in range(d, -1, -1):
        acc = acc * num + p[i] * den ** (d - i)
    return (acc > 0) - (acc < 0)


def sturm_sequence(p: PolyX) -> list[PolyX]:
    """Sturm chain of ``p`` with integer, content-free members.

    Pseudo-remainders are sign-corrected so each member is a positive multiple
    of the true negated remainder.
    """
    p0 = _positive_content_free(p)
    seq = [p0, _positive_content_free(p0.derivative())]
    while seq[-1].degree > 0:
        a, b = seq[-2], seq[-1]
        r = a.pseudo_rem(b)
        factor_sign = 1 if b.lead > 0 or (a.degree - b.degree + 1) % 2 == 0 else -1
        r = -r * factor_sign
        if r.is_zero():
            break
        seq.append(_positive_content_free(r))
    return seq


def _positive_content_free(p: PolyX) -> PolyX:
    if p.is_zero():
        return p
    return p.divexact(p.content())


def _variations(seq: list[PolyX], x: Fraction) -> int:
    signs = [s for s in (_eval_sign(q, x) for q in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(seq: list[PolyX], low: Fraction, high: Fraction) -> int:
    """Distinct real roots in ``(low, high]``."""
    return _variations(seq, low) - _variations(seq, high)


def _strip_zero_roots(p: PolyX) -> PolyX:
    k = 0
    while k < len(p.coeffs) and p.coeffs[k] == 0:
        k += 1
    return p.div_x(k)


def _root_bound(p: PolyX) -> Fraction:
    lead = abs(p.lead)
    return 1 + Fraction(max(abs(c) for c in p.coeffs[:-1]), lead) if p.degree > 0 else Fraction(1)


def isolate_smallest_positive_root(p: PolyX, precision: Fraction = DEFAULT_PRECISION) -> RootInterval:
    """Certified interval of width <= ``precision`` around the smallest positive root."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    precision = Fraction(precision)
    q = _strip_zero_roots(p)
    if q.degree < 1:
        raise NoPositiveRoot("polynomial has no positive root")
    if q.degree == 1:
        r = Fraction(-q[0], q[1])
        if r <= 0:
            raise NoPositiveRoot("polynomial has no positive root")
        return RootInterval(r, r, p, exact=r)
    seq = sturm_sequence(q)
    lo, hi = Fraction(0), _root_bound(q)
    if count_roots(seq, lo, hi) == 0:
        raise NoPositiveRoot("polynomial has no positive root")
    while True:
        if hi - lo <= precision and count_roots(seq, lo, hi) == 1:
            break
        mid = (lo + hi) / 2
        if count_roots(seq, lo, mid) >= 1:
            hi = mid
        else:
            lo = mid
    if _eval_sign(q, hi) == 0:
        return RootInterval(hi, hi, p, exact=hi)
    return RootInterval(lo, hi, p)


def smallest_positive_root(p: PolyX, precision: Fraction = DEFAULT_PRECISION) -> RootInterval:
    """Like :func:`isolate_smallest_positive_root`, factoring ``p`` first.

    Useful for large candidate polynomials such as D(t) * Disc(t); the returned
    interval refers to the irreducible factor carrying the root.
    """
    _, facs = factor_univariate(p)
    best: RootInterval | None = None
    for f, _ in facs:
        try:
            iv = isolate_smallest_positive_root(f, precision)
        except NoPositiveRoot:
            continue
        if best is None or iv.mid < best.mid:
            best = iv
    if best is None:
        raise NoPositiveRoot("polynomial has no positive root")
    return best


# -- numerics ----------------------------------------------------------------------


def richardson(seq: list, n0: int, depth: int):
    """Richardson extrapolation of ``s_n = s + c1/n + ... + c_depth/n^depth``.

    ``seq[k]`` is ``s_{n0 + k}``; the last ``depth + 1`` terms are used.
    """
    if depth == 0:
        return seq[-1]
    if len(seq) < depth + 1:
        raise InsufficientOrder("not enough terms for this extrapolation depth")
    base = n0 + len(seq) - 1 - depth
    acc = 0
    for j in range(depth + 1):
        n = base + j
        acc += seq[len(seq) - 1 - depth + j] * mpmath.mpf(n) ** depth * (-1) ** (depth + j) * comb(depth, j)
    return acc / factorial(depth)


@dataclass(frozen=True)
class AsymptoticFit:
    family: str
    rho: RootInterval
    inv_rho: mpmath.mpf
    inv_rho_estimate: mpmath.mpf
    exponent_estimate: mpmath.mpf
    lambda_estimate: mpmath.mpf
    lambda_error: mpmath.mpf
    lambda_by_depth: tuple = field(default=())
    orders_used: range = range(0)

    @property
    def lambda_drift(self) -> mpmath.mpf:
        """Relative change between the two deepest extrapolations."""
        a, b = self.lambda_by_depth[-2], self.lambda_by_depth[-1]
        return abs(b - a) / abs(b)


def _support(coeffs) -> tuple[int, list[int]]:
    start = next((i for i, c in enumerate(coeffs) if c), None)
    if start is None:
        raise InsufficientOrder("series is zero")
    return start, list(coeffs)


def growth_constant(
    family,
    series,
    rho: RootInterval,
    depth: int = DEFAULT_DEPTH,
    window: float = 0.5,
    min_order: int = 60,
    digits: int = 40,
) -> AsymptoticFit:
    """Fit ``a_n ~ lambda * n^alpha * (1/rho)^n`` to the coefficients.

    * ``1/rho``: coefficient ratios, Richardson-extrapolated to ``depth``.
    * ``alpha``: least squares on ``log(a_n rho^n) = c + alpha log n + beta / n``
      over the top ``window`` fraction of the indices.
    * ``lambda``: Richardson limits of ``a_n rho^n n^(5/2)`` at depths 1..depth;
      the spread between them is the error bar.
    """
    coeffs = getattr(series, "coefficients", None) or getattr(series, "coeffs", series)
    start, a = _support(coeffs)
    top = len(a) - 1
    if top - start < min_order:
        raise InsufficientOrder(f"need at least {min_order} nonzero coefficients, have {top - start}")
    with mpmath.workdps(digits):
        r = rho.value(digits)
        ns = list(range(max(start + 1, int(top - window * (top - start))), top + 1))
        # ratio estimate
        ratios = [mpmath.mpf(a[n + 1]) / a[n] for n in ns[:-1]]
        inv_rho_est = richardson(ratios, ns[0], depth)
        # exponent regression with a 1/n correction column
        rows = [[1, mpmath.log(n), mpmath.mpf(1) / n] for n in ns]
        rhs = [mpmath.log(mpmath.mpf(a[n])) + n * mpmath.log(r) for n in ns]
        A = mpmath.matrix(rows)
        b = mpmath.matrix(rhs)
        sol = mpmath.lu_solve(A.T * A, A.T * b)
        alpha = sol[1]
        # lambda
        scaled = [mpmath.mpf(a[n]) * r**n * mpmath.mpf(n) ** mpmath.mpf(2.5) for n in ns]
        lams = tuple(richardson(scaled, ns[0], d) for d in range(1, depth + 1))
        lam = lams[-1]
        err = max(abs(x - lam) for x in lams)
        inv_rho = 1 / r
    return AsymptoticFit(
        family=str(getattr(family, "value", family)),
        rho=rho,
        inv_rho=inv_rho,
        inv_rho_estimate=inv_rho_est,
        exponent_estimate=alpha,
        lambda_estimate=lam,
        lambda_error=err,
        lambda_by_depth=lams,
        orders_used=range(ns[0], ns[-1] + 1),
    )


def _star_limit(kind: str, rho) -> mpmath.mpf:
    if kind == "G":
        return 1 - 2 * rho
    if kind == "H":
        return (1 - 5 * rho + 5 * rho**2 - 3 * rho**3) / (1 - rho)
    raise ValueError(f"unknown star relation {kind!r}")


@dataclass(frozen=True)
class StarRatioReport:
    kind: str
    order: int
    ratio: mpmath.mpf
    extrapolated: mpmath.mpf
    expected: mpmath.mpf
    tolerance: float

    @property
    def error(self) -> mpmath.mpf:
        return abs(self.extrapolated - self.expected)

    @property
    def ok(self) -> bool:
        return self.error <= self.tolerance


def star_ratio_check(base, star, rho, kind: str = "G", tol: float = 1e-2, depth: int = 2, strict: bool = True) -> StarRatioReport:
    """Compare ``star_n / base_n`` with its predicted limit at the singularity.

    ``rho`` may be a :class:`RootInterval` or a plain number.
    """
    b = list(getattr(base, "coefficients", base))
    s = list(getattr(star, "coefficients", star))
    n_top = min(len(b), len(s)) - 1
    rv = rho.value() if isinstance(rho, RootInterval) else mpmath.mpf(rho)
    idx = [n for n in range(max(1, n_top - 10), n_top + 1) if b[n]]
    if not idx:
        raise InsufficientOrder("base series vanishes at the top orders")
    ratios = [mpmath.mpf(s[n]) / b[n] for n in idx]
    extra = richardson(ratios, idx[0], min(depth, len(ratios) - 1))
    report = StarRatioReport(kind, n_top, ratios[-1], extra, _star_limit(kind, rv), tol)
    if strict and not report.ok:
        raise ToleranceExceeded(
            f"{kind}*/{kind} ratio {mpmath.nstr(extra, 8)} differs from {mpmath.nstr(report.expected, 8)} by more than {tol}"
        )
    return report
