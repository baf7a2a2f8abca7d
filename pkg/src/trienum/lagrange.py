"""Lagrangean (tree-like) parametrizations of F, G and G*.

    X = 2t (1 + X)^3                      F  = X (1 - X) / 2
    Y = t (1 + Y)(1 + 4Y + 2Y^2)          G  = t Y (1 + Y)(1 - Y - Y^2)
                                          G* = t^2 (1 + Y)(1 - Y - Y^2)(1 + 3Y + 6Y^2 + 2Y^3)

Both X and Y count trees, so their coefficients are nonnegative integers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .census import CensusSeries, CensusTag
from .series import PolyX, USeries

__all__ = [
    "Mismatch",
    "ParamReport",
    "Relation",
    "TreeSeries",
    "check_parametrization",
    "parametrized",
    "solve_tree_series",
]


class Relation(str, enum.Enum):
    X = "X"
    Y = "Y"


# W = t * phi(W)
PHI = {
    Relation.X: PolyX([2, 6, 6, 2]),  # 2 (1 + u)^3
    Relation.Y: PolyX([1, 5, 6, 2]),  # (1 + u)(1 + 4u + 2u^2)
}


class Mismatch(AssertionError):
    def __init__(self, which: str, order: int):
        self.which = which
        self.order = order
        super().__init__(f"{which}: parametrization differs from census at t^{order}")


@dataclass(frozen=True)
class TreeSeries:
    series: USeries
    relation: Relation

    def residual(self) -> USeries:
        """``W - t phi(W)``; zero for a correct solution."""
        w = self.series
        return w - _apply(PHI[self.relation], w).shift(1)


def _apply(p: PolyX, s: USeries) -> USeries:
    acc = USeries([], s.order)
    for c in reversed(p.coeffs):
        acc = acc * s + c
    return acc


def solve_tree_series(relation, order: int) -> TreeSeries:
    """Solve ``W = t phi(W)``; the result holds ``[t^0] .. [t^order]``."""
    relation = Relation(relation)
    if order < 0:
        raise ValueError("order must be nonnegative")
    n = order + 1
    phi = PHI[relation]
    w = USeries([], n)
    # each pass fixes one more coefficient
    for _ in range(order):
        w = _apply(phi, w).shift(1)
    return TreeSeries(w, relation)


def _half(s: USeries) -> USeries:
    out = []
    for k, c in enumerate(s.coeffs):
        q, r = divmod(c, 2)
        if r:
            raise ArithmeticError(f"odd coefficient at t^{k}; the halving is not integral")
        out.append(q)
    return USeries(out, s.order)


def parametrized(which, order: int) -> USeries:
    """The parametrized expression for F, G or G*, coefficients up to ``t^order``."""
    which = CensusTag(which)
    if which is CensusTag.F:
        X = solve_tree_series(Relation.X, order).series
        return _half(X * (1 - X))
    Y = solve_tree_series(Relation.Y, order).series
    common = (1 + Y) * (1 - Y - Y * Y)
    if which is CensusTag.G:
        return (Y * common).shift(1)
    if which is CensusTag.Gstar:
        return (common * _apply(PolyX([1, 3, 6, 2]), Y)).shift(2)
    raise ValueError(f"no parametrization for {which.value}")


@dataclass(frozen=True)
class ParamReport:
    which: str
    order: int
    first_mismatch: int | None

    @property
    def ok(self) -> bool:
        return self.first_mismatch is None


def check_parametrization(which, census: CensusSeries | USeries, order: int | None = None, strict: bool = True) -> ParamReport:
    """Compare the parametrization with an independently computed census series."""
    which = CensusTag(which)
    cs = census.series if isinstance(census, CensusSeries) else census
    if order is None:
        order = cs.order - 1
    if order + 1 > cs.order:
        raise ValueError(f"census series known only to t^{cs.order - 1}")
    lhs = parametrized(which, order)
    rhs = cs.truncate(order + 1)
    bad = next((k for k, (a, b) in enumerate(zip(lhs.coeffs, rhs.coeffs)) if a != b), None)
    if bad is not None and strict:
        raise Mismatch(which.value, bad)
    return ParamReport(which.value, order, bad)
