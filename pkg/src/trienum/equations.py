"""Catalytic functional equations for near-triangulations.

Each family W in {S, T, U, V} (internal vertex degrees at least 2, 3, 4, 5)
has a generating function W(x, z): z counts edges, x**d marks a root face of
degree d + 2.  The equations are solved by one forward sweep in z, since the
right-hand side of every equation carries a factor z.

The V equation is solved in the form

    (1 + z^3) V = (1 + z^3) z + x z V^2 + z (V - V0)/x - z^3 V
                  - z^5 (1 - z^3) B

    B = (V - V0 - x V1)/x^2 - z^2 (2 + z^3) (V - V0)/x + 2 V (V0 - z)
        + x^2 V^3 - x z^2 (2 + z^3) V^2 + 2 V (V - V0) + z^7 V

with V0 = V(0, z) and V1 = [x] V.  The sign of the ``2 V (V0 - z)`` term is
the one forced by the decomposition chain checked in :func:`identity_suite`.
"""

from __future__ import annotations

import enum
import threading
import warnings
from dataclasses import dataclass, field

from .series import (
    BiSeries,
    NotDivisible,
    PolyX,
    _add_lists,
    _mul_lists,
    bs_coeff_x,
    bs_eval_x0,
)

__all__ = [
    "FamilyTag",
    "IdentityReport",
    "IdentityViolation",
    "SolvedFamily",
    "degree_bound_violation",
    "first_excess",
    "first_negative",
    "identity_suite",
    "residual",
    "solve",
    "solve_S",
    "solve_T",
    "solve_U",
    "solve_V",
]


class FamilyTag(str, enum.Enum):
    S = "S"
    T = "T"
    U = "U"
    V = "V"


class IdentityViolation(AssertionError):
    """A decomposition identity failed; carries its name and the first bad z-order."""

    def __init__(self, identity: str, order: int | None, detail: str = ""):
        self.identity = identity
        self.order = order
        msg = f"identity {identity!r} fails at z^{order}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


@dataclass(frozen=True)
class SolvedFamily:
    tag: FamilyTag
    series: BiSeries
    w0: BiSeries
    w1: BiSeries
    order: int

    @classmethod
    def from_series(cls, tag, series: BiSeries) -> SolvedFamily:
        return cls(FamilyTag(tag), series, bs_eval_x0(series), bs_coeff_x(series, 1), series.order)

    def coefficient(self, n: int, d: int) -> int:
        """Number of maps with n edges and root face of degree d + 2."""
        return self.series[n][d]


# -- sweep helpers on raw coefficient lists ----------------------------------

Row = list  # coefficients of one z-power, lowest x-power first


def _conv_at(a: list[Row], b: list[Row], m: int) -> Row:
    """[z^m] of a*b for series with zero z^0 term."""
    acc: Row = []
    for i in range(1, m):
        ai, bj = a[i], b[m - i]
        if ai and bj:
            acc = _add_lists(acc, _mul_lists(ai, bj))
    return acc


def _square_at(a: list[Row], m: int) -> Row:
    """[z^m] of a*a for a series with zero z^0 term, using symmetry."""
    acc: Row = []
    for i in range(1, (m + 1) // 2):
        ai, aj = a[i], a[m - i]
        if ai and aj:
            acc = _add_lists(acc, _mul_lists(ai, aj))
    acc = [2 * c for c in acc]
    if m % 2 == 0 and a[m // 2]:
        acc = _add_lists(acc, _mul_lists(a[m // 2], a[m // 2]))
    return acc


def _scale(k: int, p: Row) -> Row:
    return [k * c for c in p]


def _sx(p: Row, k: int) -> Row:
    # multiply by x^k
    return [0] * k + p if p else []


def _sum(*rows: Row) -> Row:
    acc: Row = []
    for r in rows:
        if r:
            acc = _add_lists(acc, r)
    return acc


def _check_order(order: int) -> None:
    if order < 2:
        raise ValueError(f"order must be >= 2, got {order}")


def _finish(tag: FamilyTag, rows: list[Row]) -> SolvedFamily:
    series = BiSeries._raw([PolyX._raw(r) for r in rows], len(rows))
    return SolvedFamily.from_series(tag, series)


def _sweep_quadratic(order: int, cubic_shift: bool, u_factor: bool) -> list[Row]:
    """Shared sweep for S, T and U.

    S_n = [n=1] + x (S^2)_{n-1} + D1(S_{n-1}), with D1 dropping x^0 and dividing
    by x.  T subtracts T_{n-3}.  U multiplies the bracket by (1 - z^3).
    """
    W: list[Row] = [[] for _ in range(order)]
    sq: list[Row] = [[] for _ in range(order)]

    def g(lst, m):
        return lst[m] if m >= 0 else []

    for n in range(1, order):
        m = n - 1
        sq[m] = _square_at(W, m)
        terms = [[1] if n == 1 else [], _sx(sq[m], 1), W[m][1:]]
        if u_factor:
            terms += [_scale(-1, _sx(g(sq, n - 4), 1)), _scale(-1, g(W, n - 4)[1:])]
            terms += [_scale(-1, g(W, n - 3)), g(W, n - 6)]
        elif cubic_shift:
            terms.append(_scale(-1, g(W, n - 3)))
        W[n] = _sum(*terms)
    return W


def _sweep_V(order: int) -> list[Row]:
    N = order
    V: list[Row] = [[] for _ in range(N)]
    V2: list[Row] = [[] for _ in range(N)]
    V3: list[Row] = [[] for _ in range(N)]
    B: list[Row] = [[] for _ in range(N)]

    def g(lst, m):
        return lst[m] if m >= 0 else []

    for n in range(1, N):
        m = n - 1
        V2[m] = _square_at(V, m)
        V3[m] = _conv_at(V, V2, m)
        # [z^m] of B; 2V(V0 - z) + 2V(V - V0) collapses to 2V^2 - 2zV
        B[m] = _sum(
            V[m][2:],
            _scale(-2, g(V, m - 2)[1:]),
            _scale(-1, g(V, m - 5)[1:]),
            _scale(-2, g(V, m - 1)),
            _sx(V3[m], 2),
            _scale(-2, _sx(g(V2, m - 2), 1)),
            _scale(-1, _sx(g(V2, m - 5), 1)),
            _scale(2, V2[m]),
            g(V, m - 7),
        )
        V[n] = _sum(
            [1] if n in (1, 4) else [],
            _scale(-2, g(V, n - 3)),
            _sx(V2[m], 1),
            V[m][1:],
            _scale(-1, g(B, n - 5)),
            g(B, n - 8),
        )
    return V


def solve_S(order: int) -> SolvedFamily:
    """Solve S = z + x z S^2 + z (S - S(0))/x to z-order ``order`` (exclusive)."""
    _check_order(order)
    return _finish(FamilyTag.S, _sweep_quadratic(order, False, False))


def solve_T(order: int) -> SolvedFamily:
    """Solve T = z + x z T^2 + z (T - T(0))/x - z^3 T."""
    _check_order(order)
    return _finish(FamilyTag.T, _sweep_quadratic(order, True, False))


def solve_U(order: int) -> SolvedFamily:
    """Solve U = z + (1 - z^3) (x z U^2 + z (U - U(0))/x - z^3 U)."""
    _check_order(order)
    return _finish(FamilyTag.U, _sweep_quadratic(order, True, True))


def solve_V(order: int) -> SolvedFamily:
    """Solve the cubic equation for V (see the module docstring)."""
    _check_order(order)
    return _finish(FamilyTag.V, _sweep_V(order))


_SOLVERS = {
    FamilyTag.S: solve_S,
    FamilyTag.T: solve_T,
    FamilyTag.U: solve_U,
    FamilyTag.V: solve_V,
}


# largest solution computed so far, per family
_largest: dict[FamilyTag, SolvedFamily] = {}
_lock = threading.Lock()


def solve(tag, order: int) -> SolvedFamily:
    """Cached dispatch on the family tag.

    A cached solution of larger order is truncated rather than recomputed.
    """
    tag = FamilyTag(tag)
    with _lock:
        best = _largest.get(tag)
    if best is not None and best.order >= order:
        return _truncate(best, order)
    sol = _SOLVERS[tag](order)
    with _lock:
        best = _largest.get(tag)
        if best is None or best.order < sol.order:
            _largest[tag] = sol
    return sol


def _truncate(sol: SolvedFamily, order: int) -> SolvedFamily:
    if sol.order == order:
        return sol
    return SolvedFamily.from_series(sol.tag, sol.series.truncate(order))


# -- whole-series residuals ---------------------------------------------------


def _zpoly(coeffs: dict[int, int], order: int) -> BiSeries:
    cs = [0] * order
    for k, c in coeffs.items():
        if k < order:
            cs[k] = c
    return BiSeries.z_poly(cs, order)


def _equation_defect(tag: FamilyTag, W: BiSeries) -> BiSeries:
    """Left minus right side of the defining equation, using only series algebra."""
    N = W.order
    z = _zpoly({1: 1}, N)
    W0 = bs_eval_x0(W)
    quot = (W - W0).div_x(1)
    if tag in (FamilyTag.S, FamilyTag.T, FamilyTag.U):
        bracket = (W * W).mul_x(1) + quot
        if tag is not FamilyTag.S:
            bracket = bracket - W.mul_z(2)
        rhs = bracket.mul_z(1)
        if tag is FamilyTag.U:
            rhs = rhs * _zpoly({0: 1, 3: -1}, N)
        return W - (z + rhs)
    W1 = bs_coeff_x(W, 1)
    W2 = W * W
    two_z3 = _zpoly({0: 2, 3: 1}, N)
    B = (
        (W - W0 - W1.mul_x(1)).div_x(2)
        - (quot * two_z3).mul_z(2)
        + 2 * W * (W0 - z)
        + (W2 * W).mul_x(2)
        - (W2 * two_z3).mul_x(1).mul_z(2)
        + 2 * W * (W - W0)
        + W.mul_z(7)
    )
    one_p = _zpoly({0: 1, 3: 1}, N)
    one_m = _zpoly({0: 1, 3: -1}, N)
    lhs = one_p * (W - z)
    rhs = W2.mul_x(1).mul_z(1) + quot.mul_z(1) - W.mul_z(3) - (one_m * B).mul_z(5)
    return lhs - rhs


def residual(sol: SolvedFamily) -> int | None:
    """First z-order at which the solution fails its own equation, or ``None``.

    Independent of the sweep: the equation is rebuilt from whole-series
    products and exact x-divisions.
    """
    defect = _equation_defect(sol.tag, sol.series)
    for n, p in enumerate(defect.coeffs):
        if p:
            return n
    return None


# -- decomposition identities -------------------------------------------------


@dataclass
class IdentityReport:
    tag: FamilyTag
    order: int
    checks: dict[str, int | None] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v is None for v in self.checks.values())

    def failures(self) -> list[tuple[str, int]]:
        return [(k, v) for k, v in self.checks.items() if v is not None]


def _first_diff(a: BiSeries, b: BiSeries) -> int | None:
    return a.first_difference(b)


def _div_or_fail(s: BiSeries, k: int, name: str, checks: dict) -> BiSeries | None:
    try:
        return s.div_x(k)
    except NotDivisible as exc:
        checks[name] = exc.z_order
        return None


def _v_chain(V: BiSeries) -> dict[str, int | None]:
    N = V.order
    z = _zpoly({1: 1}, N)
    zk = lambda k: _zpoly({k: 1}, N)  # noqa: E731
    inv_p = _zpoly({0: 1, 3: 1}, N).inv_unit()
    inv_m = _zpoly({0: 1, 3: -1}, N).inv_unit()
    V0 = bs_eval_x0(V)
    V1 = bs_coeff_x(V, 1)
    VmV0 = V - V0
    V2sq = V * V
    checks: dict[str, int | None] = {}

    V_ge2 = V2sq.mul_x(2) + VmV0
    V_2 = V.mul_x(1).mul_z(2)
    V_3 = (V_ge2 - V_2) * zk(3) * inv_p
    D_ge4 = (V0 - z) * inv_p
    V_ge2ge2 = VmV0 - V1.mul_x(1) + 2 * (V * VmV0).mul_x(2) + (V2sq * V).mul_x(4)
    V_22 = BiSeries.zero(N)
    V_2ge3 = (VmV0 + V2sq.mul_x(2)).mul_x(1).mul_z(2)
    V_33 = (VmV0 + V2sq.mul_x(2) - V.mul_x(1).mul_z(2)).mul_x(1).mul_z(5)
    cross = (V * (V0 - z)).mul_x(2)
    bracket = (
        V_ge2ge2
        - (VmV0 + V2sq.mul_x(2) - V.mul_x(1).mul_z(2)).mul_x(1).mul_z(5)
        - 2 * (VmV0 + V2sq.mul_x(2)).mul_x(1).mul_z(2)
        - 2 * (cross * zk(3) * inv_m)
    )
    V_ge4ge4 = _zpoly({0: 1, 3: -1}, N) * inv_p * bracket
    V_3ge4 = (cross + V_ge4ge4) * zk(3) * inv_m

    rhs_a = V_ge2ge2 - V_22 - 2 * V_2ge3 - V_33 - 2 * V_3ge4
    checks["V>=4,>=4 decomposition"] = _first_diff(V_ge4ge4, rhs_a)

    quarter = _div_or_fail(V_ge4ge4.mul_z(4), 1, "V4 x-divisibility", checks)
    if quarter is None:
        return checks
    V_4 = 2 * (V * D_ge4).mul_x(1).mul_z(4) + quarter
    inner = _div_or_fail(V_ge2 - V_2 - V_3 - V_4, 1, "V x-divisibility", checks)
    if inner is None:
        return checks
    checks["V = z + (z/x)(V>=2 - V2 - V3 - V4)"] = _first_diff(V, z + inner.mul_z(1))
    return checks


def _quadratic_chain(tag: FamilyTag, W: BiSeries) -> dict[str, int | None]:
    N = W.order
    z = _zpoly({1: 1}, N)
    W0 = bs_eval_x0(W)
    checks: dict[str, int | None] = {}
    W_ge2 = (W * W).mul_x(2) + (W - W0)
    name = tag.value
    if tag is FamilyTag.S:
        inner = _div_or_fail(W_ge2, 1, "S x-divisibility", checks)
        if inner is not None:
            checks["S = z + (z/x) S>=2"] = _first_diff(W, z + inner.mul_z(1))
        return checks
    W_2 = W.mul_x(1).mul_z(2)
    if tag is FamilyTag.T:
        inner = _div_or_fail(W_ge2 - W_2, 1, "T x-divisibility", checks)
        if inner is not None:
            checks["T = z + (z/x)(T>=2 - T2)"] = _first_diff(W, z + inner.mul_z(1))
        return checks
    # U: U3 = z^3 U>=3 is what turns the bracket factor into (1 - z^3)
    W_3 = (W_ge2 - W_2).mul_z(3)
    a = _div_or_fail(W_ge2 - W_2 - W_3, 1, "U x-divisibility", checks)
    if a is not None:
        checks[f"{name} = z + (z/x)({name}>=2 - {name}2 - {name}3)"] = _first_diff(W, z + a.mul_z(1))
    b = _div_or_fail(W_ge2 - W_2, 1, "U x-divisibility", checks)
    if b is not None:
        rhs = z + (b * _zpoly({0: 1, 3: -1}, N)).mul_z(1)
        checks[f"{name} = z + (z(1-z^3)/x)({name}>=2 - {name}2)"] = _first_diff(W, rhs)
    return checks


def identity_suite(sol, order: int | None = None, strict: bool = True, tag=None) -> IdentityReport:
    """Rebuild the decomposition identities from the solved series alone.

    ``sol`` may be a :class:`SolvedFamily` or a bare :class:`BiSeries` (then
    ``tag`` defaults to V).  With ``strict`` a failure raises
    :class:`IdentityViolation`; otherwise it is reported through ``warnings``.
    """
    if isinstance(sol, SolvedFamily):
        series, tag = sol.series, sol.tag
    else:
        series, tag = sol, FamilyTag(tag or "V")
    if order is not None:
        series = series.truncate(order)
    checks = _v_chain(series) if tag is FamilyTag.V else _quadratic_chain(tag, series)
    report = IdentityReport(tag, series.order, checks)
    for name, bad in report.failures():
        if strict:
            raise IdentityViolation(name, bad)
        warnings.warn(str(IdentityViolation(name, bad)), stacklevel=2)
    return report


# -- combinatorial sanity -------------------------------------------------------


def first_negative(series: BiSeries) -> tuple[int, int] | None:
    """``(n, d)`` of the first negative coefficient, or ``None``."""
    for n, p in enumerate(series.coeffs):
        for d, c in enumerate(p):
            if c < 0:
                return n, d
    return None


def first_excess(lower: BiSeries, upper: BiSeries) -> tuple[int, int] | None:
    """First ``(n, d)`` where ``lower`` exceeds ``upper`` (subfamily check)."""
    for n, (p, q) in enumerate(zip(lower.coeffs, upper.coeffs)):
        for d in range(len(p)):
            if p[d] > q[d]:
                return n, d
    return None


def degree_bound_violation(series: BiSeries) -> int | None:
    """First z-order whose x-degree exceeds ``2n``."""
    for n, p in enumerate(series.coeffs):
        if p.degree > 2 * n:
            return n
    return None
