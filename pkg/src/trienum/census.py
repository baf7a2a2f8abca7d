"""Univariate triangulation counts extracted from the solved families.

Rooting a triangulation on a digon gives ``W(0, z) = z + z L(z^3)``, where the
lone ``z`` is the link-map and ``[t^n] L`` counts triangulations with 3n edges.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .equations import FamilyTag, IdentityViolation, SolvedFamily, solve
from .series import PolyX, USeries, us_strip_cube

__all__ = [
    "CensusSeries",
    "CensusTag",
    "census",
    "derive_gstar",
    "derive_hstar",
    "extract",
    "hstar_derivation_check",
    "z_order_for",
]


class CensusTag(str, enum.Enum):
    F = "F"
    G = "G"
    H = "H"
    K = "K"
    Gstar = "Gstar"
    Hstar = "Hstar"


SOURCE = {
    CensusTag.F: FamilyTag.S,
    CensusTag.G: FamilyTag.T,
    CensusTag.H: FamilyTag.U,
    CensusTag.K: FamilyTag.V,
}

# numerator of H*/H, over (1 - t)
HSTAR_NUM = PolyX([1, -5, 5, -3])
GSTAR_FACTOR = PolyX([1, -2])


@dataclass(frozen=True)
class CensusSeries:
    """``series`` holds ``[t^0] .. [t^order]``; ``order`` is the top exponent known."""

    tag: CensusTag
    series: USeries
    order: int
    source_order_z: int

    @property
    def coefficients(self) -> tuple[int, ...]:
        return self.series.coeffs

    def __getitem__(self, n: int) -> int:
        return self.series[n]


def z_order_for(order: int) -> int:
    """Smallest z-truncation that fixes ``[t^0] .. [t^order]``."""
    return 3 * order + 2


def extract(tag, solved: SolvedFamily, order: int | None = None) -> CensusSeries:
    """Read ``L`` off ``W(0) = z + z L(z^3)``.

    Without ``order`` every coefficient the solution determines is returned.
    Raises :class:`~trienum.series.BadSupport` if ``W(0) - z`` has a term off
    the orders 1 mod 3.
    """
    tag = CensusTag(tag)
    if SOURCE.get(tag) is not solved.tag:
        raise ValueError(f"census {tag.value} is not extracted from family {solved.tag.value}")
    top = (solved.order - 2) // 3
    if order is None:
        order = top
    if order > top:
        raise ValueError(f"z-order {solved.order} fixes coefficients only up to t^{top}")
    lseries = us_strip_cube(solved.w0)
    return CensusSeries(tag, lseries.truncate(order + 1), order, solved.order)


def derive_gstar(g: CensusSeries) -> CensusSeries:
    """``G*(t) = (1 - 2t) G(t)``."""
    if g.tag is not CensusTag.G:
        raise ValueError("derive_gstar expects the G series")
    return CensusSeries(CensusTag.Gstar, g.series * GSTAR_FACTOR, g.order, g.source_order_z)


def derive_hstar(h: CensusSeries) -> CensusSeries:
    """``H*(t) = (1 - 5t + 5t^2 - 3t^3) H(t) / (1 - t)``, with an integrality check."""
    if h.tag is not CensusTag.H:
        raise ValueError("derive_hstar expects the H series")
    out = (h.series * HSTAR_NUM).div_poly(PolyX([1, -1]))
    return CensusSeries(CensusTag.Hstar, out, h.order, h.source_order_z)


def hstar_derivation_check(h: CensusSeries | USeries) -> dict[str, bool]:
    """Recompute H* through the intermediate classes and compare.

    H*        = H_{>=3,>=3,>=4} - H_{3,3,>=4} - 2 H_{3,>=4,>=4}
    H_{>=3,>=3,>=4} = (1 - 2t) H,  H_{3,3,>=4} = t^2 H,
    H_{3,>=4,>=4}   = t (1 - 2t + 2t^2) H / (1 - t),
    H_{>=2,>=2,>=3} = H / (1 - t).

    Everything is done with exact division by (1 - t).  The relation is pure
    series algebra, so it holds for any input series.
    """
    H = h.series if isinstance(h, CensusSeries) else h
    one_minus_t = PolyX([1, -1])
    checks: dict[str, bool] = {}
    h_223 = H.div_poly(one_minus_t)
    checks["H_{>=2,>=2,>=3} (1 - t) = H"] = (h_223 * one_minus_t) == H
    h_334 = H * PolyX([1, -2])
    h_33_4 = H * PolyX([0, 0, 1])
    h_3_44 = (H * PolyX([0, 1, -2, 2])).div_poly(one_minus_t)
    chain = h_334 - h_33_4 - 2 * h_3_44
    closed = (H * HSTAR_NUM).div_poly(one_minus_t)
    checks["H* chain = closed form"] = chain == closed
    bad = [k for k, v in checks.items() if not v]
    if bad:
        raise IdentityViolation(bad[0], None)
    return checks


def census(tag, order: int) -> CensusSeries:
    """Coefficients ``[t^0] .. [t^order]`` of any census series."""
    tag = CensusTag(tag)
    if order < 0:
        raise ValueError("order must be nonnegative")
    if tag is CensusTag.Gstar:
        return derive_gstar(census(CensusTag.G, order))
    if tag is CensusTag.Hstar:
        return derive_hstar(census(CensusTag.H, order))
    solved = solve(SOURCE[tag], z_order_for(order))
    return extract(tag, solved, order)
