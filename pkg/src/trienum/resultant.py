"""Resultants and discriminants by the subresultant remainder sequence.

Polynomials are lists of coefficients, lowest power first.  The coefficients
may be Python ints, :class:`~trienum.series.PolyX` values (giving results in
Z[t]) or :class:`~trienum.mpoly.MPoly` values.  Every division in the
sequence is exact, so coefficient growth stays polynomial.
"""

from __future__ import annotations

from typing import Sequence

from .mpoly import MPoly

__all__ = [
    "discriminant",
    "mpoly_discriminant",
    "mpoly_resultant",
    "pseudo_remainder",
    "resultant",
    "sylvester_resultant",
]


def _divexact(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{a} not divisible by {b}")
        return q
    if isinstance(a, int):
        # promote to the ring of b
        a = b * 0 + a
    return a.divexact(b)


def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def pseudo_remainder(a: Sequence, b: Sequence) -> list:
    """``lc(b)**(deg a - deg b + 1) * a mod b``."""
    a = _trim(list(a))
    b = _trim(list(b))
    db = len(b) - 1
    if db < 0:
        raise ZeroDivisionError("pseudo-division by zero")
    steps = len(a) - 1 - db + 1
    lead = b[-1]
    r = a
    for _ in range(max(steps, 0)):
        if len(r) - 1 < db:
            r = [c * lead for c in r]
            continue
        top = r[-1]
        shift = len(r) - 1 - db
        r = [c * lead for c in r]
        for j in range(db + 1):
            r[shift + j] = r[shift + j] - top * b[j]
        r.pop()
        _trim(r)
    return r


def resultant(a: Sequence, b: Sequence):
    """Resultant (Sylvester-determinant convention) of two polynomials."""
    A = _trim(list(a))
    B = _trim(list(b))
    if not A or not B:
        return 0
    sign = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) % 2 and (len(B) - 1) % 2:
            sign = -1
    if len(B) == 1:
        return sign * B[0] ** (len(A) - 1)
    g = h = 1
    while True:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 and db % 2:
            sign = -sign
        R = pseudo_remainder(A, B)
        if not R:
            return 0
        denom = g * h**delta
        A, B = B, [_divexact(c, denom) for c in R]
        g = A[-1]
        if delta:
            h = _divexact(g**delta, h ** (delta - 1))
        if len(B) == 1:
            da = len(A) - 1
            out = _divexact(B[0] ** da, h ** (da - 1))
            return sign * out


def discriminant(q: Sequence):
    """``(-1)**(d(d-1)/2) * Res(q, q') / lc(q)`` for ``q`` of degree d >= 1."""
    q = _trim(list(q))
    d = len(q) - 1
    if d < 1:
        raise ValueError("discriminant needs positive degree")
    dq = [k * q[k] for k in range(1, d + 1)]
    r = resultant(q, dq)
    r = _divexact(r, q[-1])
    return -r if (d * (d - 1) // 2) % 2 else r


def sylvester_resultant(a: Sequence[int], b: Sequence[int]):
    """Reference resultant from the Sylvester matrix (fraction-free Bareiss).

    Only meant as a test oracle for integer coefficients.
    """
    a = _trim([int(c) for c in a])
    b = _trim([int(c) for c in b])
    m, n = len(a) - 1, len(b) - 1
    if m < 0 or n < 0:
        return 0
    size = m + n
    if size == 0:
        return 1
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(a)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(b)):
            row[i + j] = c
        rows.append(row)
    M = rows
    sign = 1
    prev = 1
    for k in range(size - 1):
        if M[k][k] == 0:
            for r in range(k + 1, size):
                if M[r][k]:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[size - 1][size - 1]


def mpoly_resultant(p: MPoly, q: MPoly, var: str) -> MPoly:
    """Resultant with respect to ``var``; the result lives in the same ring."""
    r = resultant(p.coeffs_in(var), q.coeffs_in(var))
    if isinstance(r, int):
        return MPoly.const(p.vars, r)
    return r


def mpoly_discriminant(p: MPoly, var: str) -> MPoly:
    r = discriminant(p.coeffs_in(var))
    if isinstance(r, int):
        return MPoly.const(p.vars, r)
    return r
