"""Sparse multivariate integer polynomials.

Only what the elimination needs: ring arithmetic, exact division, partial
derivatives, substitution of a variable by a polynomial, and conversion to
python-flint for factoring.  Monomials are exponent tuples; lex order with the
first variable largest.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Mapping, Sequence

import flint

__all__ = ["MPoly", "factor"]


class MPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, int] | None = None):
        self.vars = tuple(variables)
        self.terms = {m: int(c) for m, c in (terms or {}).items() if c}

    # construction
    @classmethod
    def const(cls, variables, c: int) -> MPoly:
        n = len(variables)
        return cls(variables, {(0,) * n: c})

    @classmethod
    def gen(cls, variables, name: str) -> MPoly:
        variables = tuple(variables)
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(variables, {tuple(e): 1})

    @classmethod
    def gens(cls, variables) -> tuple[MPoly, ...]:
        return tuple(cls.gen(variables, v) for v in variables)

    def _new(self, terms: dict) -> MPoly:
        p = object.__new__(MPoly)
        p.vars = self.vars
        p.terms = terms
        return p

    def _lift(self, other) -> MPoly:
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch {other.vars} vs {self.vars}")
            return other
        if isinstance(other, int):
            return MPoly.const(self.vars, other)
        raise TypeError(f"cannot combine MPoly with {type(other).__name__}")

    # basic protocol
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MPoly.const(self.vars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"MPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, m) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # arithmetic
    def __neg__(self) -> MPoly:
        return self._new({m: -c for m, c in self.terms.items()})

    def __add__(self, other) -> MPoly:
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return self._new(out)

    __radd__ = __add__

    def __sub__(self, other) -> MPoly:
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> MPoly:
        return (-self) + other

    def __mul__(self, other) -> MPoly:
        if isinstance(other, int):
            if not other:
                return self._new({})
            return self._new({m: c * other for m, c in self.terms.items()})
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return self._new({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MPoly:
        out = MPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    # structure
    def leading(self) -> tuple[tuple, int]:
        m = max(self.terms)
        return m, self.terms[m]

    def degree(self, var: str | int) -> int:
        k = var if isinstance(var, int) else self.vars.index(var)
        return max((m[k] for m in self.terms), default=-1)

    def has(self, var: str) -> bool:
        return self.degree(var) > 0

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    def primitive(self) -> MPoly:
        """Divide out the integer content; make the lex-leading coefficient positive."""
        if not self.terms:
            return self
        g = self.content()
        if self.leading()[1] < 0:
            g = -g
        return self._new({m: c // g for m, c in self.terms.items()})

    def divexact(self, other) -> MPoly:
        """Exact quotient; raises ``ArithmeticError`` if ``other`` does not divide."""
        if isinstance(other, int):
            out = {}
            for m, c in self.terms.items():
                q, r = divmod(c, other)
                if r:
                    raise ArithmeticError("inexact division by integer")
                out[m] = q
            return self._new(out)
        other = self._lift(other)
        if not other.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if len(other.terms) == 1:
            (dm, dc), = other.terms.items()
            out = {}
            for m, c in self.terms.items():
                e = tuple(a - b for a, b in zip(m, dm))
                q, r = divmod(c, dc)
                if r or min(e) < 0:
                    raise ArithmeticError("inexact monomial division")
                out[e] = q
            return self._new(out)
        lm, lc = other.leading()
        rem = dict(self.terms)
        quo: dict = {}
        while rem:
            m = max(rem)
            c = rem[m]
            e = tuple(a - b for a, b in zip(m, lm))
            q, r = divmod(c, lc)
            if r or min(e) < 0:
                raise ArithmeticError("inexact polynomial division")
            quo[e] = q
            for m2, c2 in other.terms.items():
                mm = tuple(a + b for a, b in zip(e, m2))
                v = rem.get(mm, 0) - q * c2
                if v:
                    rem[mm] = v
                else:
                    rem.pop(mm, None)
        return self._new(quo)

    def diff(self, var: str) -> MPoly:
        k = self.vars.index(var)
        out = {}
        for m, c in self.terms.items():
            if m[k]:
                e = list(m)
                e[k] -= 1
                out[tuple(e)] = c * m[k]
        return self._new(out)

    def coeffs_in(self, var: str) -> list[MPoly]:
        """Coefficients as a polynomial in ``var`` (index = power), same ring."""
        k = self.vars.index(var)
        deg = self.degree(k)
        out: list[dict] = [{} for _ in range(deg + 1)]
        for m, c in self.terms.items():
            e = list(m)
            p = e[k]
            e[k] = 0
            out[p][tuple(e)] = c
        return [self._new(d) for d in out]

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[MPoly], var: str) -> MPoly:
        """Inverse of :meth:`coeffs_in`."""
        vars_ = coeffs[0].vars
        k = vars_.index(var)
        out: dict = {}
        for p, cp in enumerate(coeffs):
            for m, c in cp.terms.items():
                e = list(m)
                e[k] += p
                out[tuple(e)] = c
        return cls(vars_, out)

    def subs(self, var: str, value: MPoly | int) -> MPoly:
        """Substitute a polynomial (in the same ring) for ``var``."""
        coeffs = self.coeffs_in(var)
        acc = MPoly(self.vars)
        for c in reversed(coeffs):
            acc = acc * value + c
        return acc

    def drop(self, var: str) -> MPoly:
        """Remove a variable the polynomial does not depend on."""
        k = self.vars.index(var)
        if self.has(var):
            raise ValueError(f"polynomial depends on {var}")
        new_vars = self.vars[:k] + self.vars[k + 1 :]
        return MPoly(new_vars, {m[:k] + m[k + 1 :]: c for m, c in self.terms.items()})

    def rename(self, mapping: Mapping[str, str]) -> MPoly:
        return MPoly(tuple(mapping.get(v, v) for v in self.vars), self.terms)

    def reorder(self, variables: Iterable[str]) -> MPoly:
        """Same polynomial in a ring with the variables listed in a new order."""
        variables = tuple(variables)
        idx = [self.vars.index(v) if v in self.vars else None for v in variables]
        for v in self.vars:
            if v not in variables and self.has(v):
                raise ValueError(f"polynomial depends on {v}")
        out = {}
        for m, c in self.terms.items():
            out[tuple(m[i] if i is not None else 0 for i in idx)] = c
        return MPoly(variables, out)

    # flint bridge
    def to_flint(self):
        ctx = flint.fmpz_mpoly_ctx.get(self.vars, "lex")
        return ctx.from_dict(dict(self.terms))

    @classmethod
    def from_flint(cls, p, variables) -> MPoly:
        return cls(variables, {tuple(m): int(c) for m, c in p.to_dict().items()})


def factor(p: MPoly) -> tuple[int, list[tuple[MPoly, int]]]:
    """Irreducible factorization over the integers (delegated to FLINT)."""
    if len(p.vars) == 0 or not p.terms:
        raise ValueError("cannot factor a zero or variable-free polynomial")
    content, facs = p.to_flint().factor()
    return int(content), [(MPoly.from_flint(f, p.vars), int(e)) for f, e in facs]
