"""Algebraic equations Q(y, t) = 0 for the census series.

A :class:`BiPoly` stores one :class:`~trienum.series.PolyX` in t per power of
y.  The shipped equations live in ``data/*.txt`` (one monomial per line,
``i j c`` meaning ``c * y**i * t**j``; ``#`` starts a comment).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

import flint

from .resultant import discriminant, resultant
from .series import PolyX, USeries

__all__ = [
    "BiPoly",
    "DataFormatError",
    "ResidualNonzero",
    "ResidualReport",
    "discriminant_y",
    "factor_univariate",
    "load_equation",
    "load_polynomial",
    "resultant_y",
    "series_from_equation",
    "singular_candidates",
    "verify_algebraic",
]

# census tag -> data file of its equation, and of the singularity polynomial
EQUATION_FILES = {"F": "eq_F", "G": "eq_G", "H": "eq_H", "K": "eq_K"}
SINGULARITY_FILES = {"H": "r_H", "K": "r_K"}


class DataFormatError(ValueError):
    pass


class ResidualNonzero(AssertionError):
    """The series does not annihilate the equation; ``order`` is the first bad power."""

    def __init__(self, order: int, hint: str = ""):
        self.order = order
        self.hint = hint
        msg = f"residual nonzero at t^{order}"
        if hint:
            msg += f" ({hint})"
        super().__init__(msg)


class BiPoly:
    """Polynomial in y with coefficients in Z[t]; ``rows[i]`` multiplies ``y**i``."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[PolyX | Iterable[int]] = ()):
        rs = [r if isinstance(r, PolyX) else PolyX(r) for r in rows]
        while rs and not rs[-1]:
            rs.pop()
        self.rows = tuple(rs)

    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, int], int]) -> BiPoly:
        if not terms:
            return cls()
        dy = max(i for i, _ in terms)
        rows: list[dict[int, int]] = [{} for _ in range(dy + 1)]
        for (i, j), c in terms.items():
            rows[i][j] = rows[i].get(j, 0) + c
        out = []
        for r in rows:
            dt = max(r, default=-1)
            out.append(PolyX([r.get(j, 0) for j in range(dt + 1)]))
        return cls(out)

    @classmethod
    def y_minus(cls, p: PolyX) -> BiPoly:
        """``y - p(t)``."""
        return cls([-p, PolyX.const(1)])

    def terms(self) -> dict[tuple[int, int], int]:
        return {(i, j): c for i, r in enumerate(self.rows) for j, c in enumerate(r) if c}

    @property
    def y_degree(self) -> int:
        return len(self.rows) - 1

    @property
    def t_degree(self) -> int:
        return max((r.degree for r in self.rows), default=-1)

    def coeff(self, i: int) -> PolyX:
        return self.rows[i] if 0 <= i < len(self.rows) else PolyX()

    def leading_coefficient(self) -> PolyX:
        return self.rows[-1] if self.rows else PolyX()

    def derivative_y(self) -> BiPoly:
        return BiPoly([r * i for i, r in enumerate(self.rows)][1:])

    def __eq__(self, other) -> bool:
        return isinstance(other, BiPoly) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __neg__(self) -> BiPoly:
        return BiPoly([-r for r in self.rows])

    def __repr__(self) -> str:
        return f"BiPoly({self})"

    def __str__(self) -> str:
        parts = []
        for i in range(len(self.rows) - 1, -1, -1):
            r = self.rows[i]
            if not r:
                continue
            mono = "" if i == 0 else ("*y" if i == 1 else f"*y^{i}")
            parts.append(f"({r.format('t')}){mono}")
        return " + ".join(parts) or "0"

    def content(self) -> int:
        from math import gcd

        g = 0
        for r in self.rows:
            g = gcd(g, r.content())
        return g

    def normalized(self) -> BiPoly:
        """Content 1, with the coefficient of the top (y, t) monomial positive."""
        if not self.rows:
            return self
        g = self.content()
        if self.rows[-1].lead < 0:
            g = -g
        return BiPoly([r.divexact(g) for r in self.rows])

    def substitute(self, s: USeries) -> USeries:
        """``Q(s(t), t)`` truncated at ``s.order``."""
        acc = USeries([], s.order)
        for r in reversed(self.rows):
            acc = acc * s + r
        return acc

    def to_text(self, header: str = "") -> str:
        lines = [f"# {line}" for line in header.splitlines()]
        lines.append("# format: one monomial per line, 'i j c' = c * y^i * t^j")
        lines += [f"{i} {j} {c}" for (i, j), c in sorted(self.terms().items())]
        return "\n".join(lines) + "\n"


def _parse(text: str, source: str) -> BiPoly:
    terms: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 3:
            raise DataFormatError(f"{source}:{lineno}: expected 'i j c', got {raw!r}")
        try:
            i, j, c = (int(f) for f in fields)
        except ValueError:
            raise DataFormatError(f"{source}:{lineno}: non-integer field in {raw!r}") from None
        if i < 0 or j < 0:
            raise DataFormatError(f"{source}:{lineno}: negative exponent")
        terms[(i, j)] = terms.get((i, j), 0) + c
    return BiPoly.from_terms(terms)


def _data_text(name: str, data_dir: str | os.PathLike | None) -> tuple[str, str]:
    fname = name if name.endswith(".txt") else f"{name}.txt"
    if data_dir is not None:
        path = Path(data_dir) / fname
        return path.read_text(), str(path)
    ref = resources.files("trienum") / "data" / fname
    return ref.read_text(), fname


def load_equation(name: str, data_dir=None) -> BiPoly:
    """Load a shipped equation by file stem (``eq_K``) or census tag (``K``)."""
    stem = EQUATION_FILES.get(name, name)
    text, src = _data_text(stem, data_dir)
    return _parse(text, src)


def load_polynomial(name: str, data_dir=None) -> PolyX:
    """Load a univariate polynomial in t (all exponents of y must be 0)."""
    stem = SINGULARITY_FILES.get(name, name)
    q = load_equation(stem, data_dir)
    if q.y_degree > 0:
        raise DataFormatError(f"{stem}: expected a polynomial in t only")
    return q.coeff(0)


# -- verification --------------------------------------------------------------


@dataclass(frozen=True)
class ResidualReport:
    order: int
    first_nonzero: int | None
    hint: str = ""

    @property
    def ok(self) -> bool:
        return self.first_nonzero is None


def _localize(q: BiPoly, s: USeries, res: USeries) -> str:
    # a single wrong coefficient c*y^i*t^j leaves residual delta*t^j*s^i
    vr = res.valuation()
    power = USeries.one(s.order)
    for i in range(q.y_degree + 1):
        vi = power.valuation()
        if vi is not None and vi <= vr:
            j = vr - vi
            delta, rem = divmod(res[vr], power[vi])
            if not rem and res == (power * delta).shift(j):
                return f"P_{i} coefficient of t^{j} off by {delta:+d}"
        power = power * s
    return ""


def verify_algebraic(q: BiPoly, s: USeries, strict: bool = True) -> ResidualReport:
    """Check ``Q(s, t) = 0 mod t**s.order``.

    On failure the report carries the first nonzero order and, when the
    residual looks like a single corrupted coefficient, which ``P_i`` (the
    coefficient of ``y**i``) and which power of t is off.
    """
    if s.order < 1:
        raise ValueError("series order must be >= 1")
    res = q.substitute(s)
    first = res.valuation()
    if first is None:
        return ResidualReport(s.order, None)
    hint = _localize(q, s, res)
    if strict:
        raise ResidualNonzero(first, hint)
    return ResidualReport(s.order, first, hint)


def series_from_equation(q: BiPoly, order: int) -> USeries:
    """The unique root ``y(t)`` with ``y(0) = 0``, by Newton iteration.

    Needs ``Q(0, 0) = 0`` and ``dQ/dy(0, 0) = +1 or -1`` so that every step
    stays over the integers.
    """
    if q.coeff(0)[0] != 0:
        raise ValueError("Q(0, 0) must vanish")
    if q.coeff(1)[0] not in (1, -1):
        raise ValueError("dQ/dy(0, 0) must be +1 or -1")
    dq = q.derivative_y()
    y = USeries([], 1)
    prec = 1
    while prec < order:
        prec = min(2 * prec, order)
        y = USeries(y.coeffs, prec)
        step = q.substitute(y) * dq.substitute(y).inv_unit()
        y = y - step
    return USeries(y.coeffs, order)


# -- resultants, discriminants, candidates --------------------------------------


def resultant_y(a: BiPoly, b: BiPoly) -> PolyX:
    if a.y_degree < 1 or b.y_degree < 1:
        raise ValueError("resultant_y needs positive y-degrees")
    r = resultant(list(a.rows), list(b.rows))
    return r if isinstance(r, PolyX) else PolyX.const(r)


def discriminant_y(q: BiPoly) -> PolyX:
    if q.y_degree < 1:
        raise ValueError("discriminant_y needs positive y-degree")
    r = discriminant(list(q.rows))
    return r if isinstance(r, PolyX) else PolyX.const(r)


def singular_candidates(q: BiPoly) -> PolyX:
    """``R(t) = D(t) * Disc_y(Q)``, content removed, positive leading coefficient."""
    return (q.leading_coefficient() * discriminant_y(q)).primitive()


def factor_univariate(p: PolyX) -> tuple[int, list[tuple[PolyX, int]]]:
    """Factor over the integers (delegated to FLINT)."""
    content, facs = flint.fmpz_poly([int(c) for c in p.coeffs]).factor()
    return int(content), [(PolyX([int(c) for c in f.coeffs()]), int(e)) for f, e in facs]
