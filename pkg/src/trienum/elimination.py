"""Quadratic method for the S, T and U equations.

Each equation is written ``P(W(x), W(0), x, z) = 0`` with a polynomial
``P(T, T0, X, Z)``.  Along the unique series ``x = X(z)`` that kills
``P1 = dP/dT``, the derivative ``P3 = dP/dX`` vanishes too, so eliminating
``T`` and ``X`` from ``{P, P1, P3}`` leaves an equation for ``W(0)`` alone.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebraic import BiPoly
from .equations import FamilyTag, SolvedFamily, solve
from .mpoly import MPoly, factor
from .resultant import mpoly_resultant
from .series import BiSeries, PolyX, USeries

__all__ = [
    "MultipleFactors",
    "NoAnnihilatingFactor",
    "NoSeriesRoot",
    "TriSystem",
    "eliminate_quadratic",
    "kernel_root",
    "substitute_census",
    "system_residuals",
]

VARS = ("T", "T0", "X", "Z")
MIN_CHECK_ORDER = 30


class NoSeriesRoot(ArithmeticError):
    pass


class NoAnnihilatingFactor(ArithmeticError):
    pass


class MultipleFactors(ArithmeticError):
    pass


def _family_polynomial(tag: FamilyTag) -> MPoly:
    T, T0, X, Z = MPoly.gens(VARS)
    if tag is FamilyTag.S:
        return X * Z + X**2 * Z * T**2 + Z * T - Z * T0 - X * T
    if tag is FamilyTag.T:
        return X * Z + X**2 * Z * T**2 + Z * T - Z * T0 - X * Z**3 * T - X * T
    if tag is FamilyTag.U:
        w = 1 - Z**3
        return X * Z + X**2 * Z * w * T**2 + Z * w * (T - T0) - Z**3 * w * X * T - X * T
    raise ValueError(f"no quadratic-method system for family {tag.value}")


@dataclass(frozen=True)
class TriSystem:
    """``P`` with its partial derivatives in the first (T) and third (X) variables."""

    tag: FamilyTag
    P: MPoly
    P1: MPoly
    P3: MPoly

    @classmethod
    def for_family(cls, tag) -> TriSystem:
        tag = FamilyTag(tag)
        P = _family_polynomial(tag)
        return cls(tag, P, P.diff("T"), P.diff("X"))


# -- evaluating polynomials on series -------------------------------------------


def _on_bivariate(p: MPoly, W: BiSeries, W0: BiSeries) -> BiSeries:
    """``p(W(x, z), W0(z), x, z)`` as a series in z with polynomial coefficients."""
    N = W.order
    pw_cache: dict[tuple[str, int], BiSeries] = {}

    def power(name: str, base: BiSeries, k: int) -> BiSeries:
        key = (name, k)
        if key not in pw_cache:
            pw_cache[key] = BiSeries.one(N) if k == 0 else power(name, base, k - 1) * base
        return pw_cache[key]

    acc = BiSeries.zero(N)
    for (a, b, c, d), coef in p.terms.items():
        term = power("W", W, a) * power("W0", W0, b)
        acc = acc + (term.mul_x(c).mul_z(d) * coef)
    return acc


def _on_univariate(p: MPoly, values: dict[str, USeries], order: int) -> USeries:
    """Evaluate ``p`` with every variable replaced by a series in one variable."""
    powers: dict[tuple[str, int], USeries] = {}

    def power(name: str, k: int) -> USeries:
        key = (name, k)
        if key not in powers:
            powers[key] = USeries.one(order) if k == 0 else power(name, k - 1) * values[name]
        return powers[key]

    acc = USeries([], order)
    for m, coef in p.terms.items():
        term = USeries.one(order)
        for name, e in zip(p.vars, m):
            if e:
                term = term * power(name, e)
        acc = acc + term * coef
    return acc


def kernel_root(sys: TriSystem, solved: SolvedFamily, order: int | None = None) -> USeries:
    """The series ``X(z)`` with ``P1(W(X), W(0), X, z) = 0``, by Newton iteration."""
    if solved.tag is not sys.tag:
        raise ValueError("solved family does not match the system")
    N = solved.order if order is None else min(order, solved.order)
    W = solved.series.truncate(N)
    F = _on_bivariate(sys.P1, W, solved.w0.truncate(N))
    dF = F.x_derivative()
    # the z^0 part must vanish at x = 0 and have slope +1 or -1 there
    f0 = F[0] if N else PolyX()
    if f0[0] != 0:
        raise NoSeriesRoot("order-0 equation has no root at x = 0")
    if f0[1] not in (1, -1):
        raise NoSeriesRoot(f"order-0 slope {f0[1]} is not +1 or -1")
    X = USeries([], N)
    prec = 1
    while prec < N:
        prec = min(2 * prec, N)
        Xp = X.truncate(prec)
        val = F.truncate(prec).evaluate_x(Xp)
        slope = dF.truncate(prec).evaluate_x(Xp)
        X = USeries((Xp - val * slope.inv_unit()).coeffs, N)
    return X


def system_residuals(sys: TriSystem, solved: SolvedFamily, X: USeries) -> dict[str, int | None]:
    """First nonzero z-order of P, P1 and P3 along ``x = X(z)`` (``None`` = zero)."""
    W = solved.series.truncate(X.order)
    W0 = solved.w0.truncate(X.order)
    out = {}
    for name, poly in (("P", sys.P), ("P1", sys.P1), ("P3", sys.P3)):
        out[name] = _on_bivariate(poly, W, W0).evaluate_x(X).valuation()
    return out


# -- elimination -------------------------------------------------------------------


def _vanishing_factors(p: MPoly, values: dict[str, USeries], order: int) -> list[MPoly]:
    _, facs = factor(p)
    hits = []
    for f, _ in facs:
        if not any(f.has(v) for v in values):
            continue
        if _on_univariate(f, values, order).is_zero():
            hits.append(f.primitive())
    return hits


def _select(p: MPoly, values: dict[str, USeries], order: int, what: str) -> MPoly:
    hits = _vanishing_factors(p, values, order)
    if not hits:
        raise NoAnnihilatingFactor(f"no factor of the {what} vanishes on the series")
    if len(hits) > 1:
        raise MultipleFactors(f"{len(hits)} factors of the {what} vanish to order {order}")
    return hits[0]


def _to_bipoly(p: MPoly, y: str, t: str) -> BiPoly:
    iy, it = p.vars.index(y), p.vars.index(t)
    for m in p.terms:
        if any(e for k, e in enumerate(m) if k not in (iy, it)):
            raise ValueError("polynomial involves other variables")
    return BiPoly.from_terms({(m[iy], m[it]): c for m, c in p.terms.items()})


def eliminate_quadratic(sys: TriSystem | str, which=None, order: int = 40) -> BiPoly:
    """Equation for ``W(0, z)``, returned as a :class:`BiPoly` with y = W(0), t = z.

    ``order`` is the z-order of the series used to pick factors; it is raised
    automatically (up to four doublings) if two factors both vanish.
    """
    if not isinstance(sys, TriSystem):
        sys = TriSystem.for_family(sys)
    if which is not None and FamilyTag(which) is not sys.tag:
        raise ValueError("system and family disagree")
    order = max(order, MIN_CHECK_ORDER)
    R1 = mpoly_resultant(sys.P, sys.P1, "T")
    R3 = mpoly_resultant(sys.P3, sys.P1, "T")
    for _ in range(5):
        solved = solve(sys.tag, order)
        X = kernel_root(sys, solved)
        W0 = solved.w0.to_useries()
        Z = USeries.var(order)
        values = {"T0": W0, "X": X, "Z": Z}
        try:
            f1 = _select(R1, values, order, "resultant of P and P1")
            f3 = _select(R3, values, order, "resultant of P3 and P1")
            E = mpoly_resultant(f1, f3, "X")
            final = _select(E, {"T0": W0, "Z": Z}, order, "eliminant")
        except MultipleFactors:
            order *= 2
            continue
        return _to_bipoly(final, "T0", "Z").normalized()
    raise MultipleFactors("could not isolate a single factor")


def substitute_census(eq: BiPoly, census: USeries | None = None) -> BiPoly:
    """Rewrite an equation for ``W(0) = z + z L(z^3)`` as one for ``L(t)``.

    Substitutes, factors, keeps the factor in L whose z-exponents (after
    removing a power of z) are all multiples of 3, and maps ``z^3 -> t``.  With
    several candidates, ``census`` (the series L) picks the one it annihilates.
    """
    vars_ = ("L", "Z")
    L, Z = MPoly.gens(vars_)
    y_sub = Z + Z * L
    acc = MPoly(vars_)
    for i in range(eq.y_degree, -1, -1):
        row = MPoly(vars_, {(0, j): c for j, c in enumerate(eq.coeff(i)) if c})
        acc = acc * y_sub + row
    _, facs = factor(acc)
    candidates = []
    for f, _ in facs:
        if not f.has("L"):
            continue
        zmin = min(m[1] for m in f.terms)
        exps = {m[1] - zmin for m in f.terms}
        if all(e % 3 == 0 for e in exps):
            terms = {(m[0], (m[1] - zmin) // 3): c for m, c in f.terms.items()}
            candidates.append(BiPoly.from_terms(terms).normalized())
    if census is not None and len(candidates) > 1:
        candidates = [q for q in candidates if q.substitute(census).is_zero()]
    if len(candidates) != 1:
        raise NoAnnihilatingFactor(f"{len(candidates)} candidate factors after substitution")
    return candidates[0]
