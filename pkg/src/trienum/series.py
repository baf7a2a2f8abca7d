"""Exact integer polynomials and truncated power series.

Three containers cover every generating function in the package:

* :class:`PolyX` -- dense polynomial with integer coefficients.  Used for the
  polynomials in the catalytic variable ``x`` and, unchanged, for univariate
  polynomials in ``t`` (resultants, discriminants, root isolation).
* :class:`USeries` -- univariate power series truncated at a given order.
* :class:`BiSeries` -- power series in ``z`` whose coefficients are
  :class:`PolyX` values in ``x``.

All values are immutable.  Integer-only arithmetic is deliberate: the only
divisions needed are by series whose constant term is ``+1`` or ``-1`` and by
monomials ``x**k``.
"""

from __future__ import annotations

from itertools import islice
from typing import Iterable, Sequence

__all__ = [
    "BadSupport",
    "BiSeries",
    "NonIntegral",
    "NotAUnit",
    "NotDivisible",
    "PolyX",
    "USeries",
    "bs_coeff_x",
    "bs_div_x",
    "bs_eval_x0",
    "bs_inv_unit",
    "bs_mul",
    "poly_add",
    "poly_mul",
    "poly_mul_schoolbook",
    "us_compose_cube",
    "us_strip_cube",
]


class NotAUnit(ArithmeticError):
    """Raised when inverting a series whose constant term is not +1 or -1."""


class NotDivisible(ArithmeticError):
    """Raised when an exact division by ``x**k`` leaves a remainder."""

    def __init__(self, k: int, z_order: int | None = None):
        self.k = k
        self.z_order = z_order
        where = "" if z_order is None else f" at z^{z_order}"
        super().__init__(f"coefficient not divisible by x^{k}{where}")


class NonIntegral(ArithmeticError):
    """Raised when an exact series division produces a non-integer coefficient."""

    def __init__(self, order: int):
        self.order = order
        super().__init__(f"non-integral coefficient at order {order}")


class BadSupport(ValueError):
    """Raised when a digon series has a term at an order not congruent to 1 mod 3."""

    def __init__(self, z_order: int):
        self.z_order = z_order
        super().__init__(f"unexpected term at z^{z_order} (order not 1 mod 3)")


# -- dense coefficient-list kernels ------------------------------------------

# below this many coefficients in the shorter operand, schoolbook wins
KRONECKER_THRESHOLD = 24


def _strip(coeffs: list[int]) -> list[int]:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def poly_mul_schoolbook(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Reference product of two coefficient lists."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return _strip(out)


def _slot_bits(a: Sequence[int], b: Sequence[int]) -> int:
    ma = max(abs(c) for c in a).bit_length()
    mb = max(abs(c) for c in b).bit_length()
    bits = ma + mb + min(len(a), len(b)).bit_length() + 2
    return (bits + 7) // 8 * 8


def _pack(coeffs: Sequence[int], nbytes: int) -> int:
    half = 1 << (8 * nbytes - 1)
    raw = b"".join((c + half).to_bytes(nbytes, "little") for c in coeffs)
    bias = int.from_bytes(half.to_bytes(nbytes, "little") * len(coeffs), "little")
    return int.from_bytes(raw, "little") - bias


def _unpack(value: int, count: int, nbytes: int) -> list[int]:
    half = 1 << (8 * nbytes - 1)
    bias = int.from_bytes(half.to_bytes(nbytes, "little") * count, "little")
    raw = (value + bias).to_bytes(count * nbytes, "little")
    return [
        int.from_bytes(raw[i : i + nbytes], "little") - half
        for i in range(0, count * nbytes, nbytes)
    ]


def _kronecker_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    # Signed Kronecker substitution: evaluate at 2**bits, multiply, read back
    # balanced digits.  The slot width bounds every product coefficient.
    nbytes = _slot_bits(a, b) // 8
    prod = _pack(a, nbytes) * _pack(b, nbytes)
    return _strip(_unpack(prod, len(a) + len(b) - 1, nbytes))


def _mul_lists(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    if min(len(a), len(b)) < KRONECKER_THRESHOLD:
        return poly_mul_schoolbook(a, b)
    return _kronecker_mul(a, b)


def _add_lists(a: Sequence[int], b: Sequence[int], scale: int = 1) -> list[int]:
    if len(a) < len(b):
        out = list(a) + [0] * (len(b) - len(a))
    else:
        out = list(a)
    if scale == 1:
        for i, c in enumerate(b):
            out[i] += c
    else:
        for i, c in enumerate(b):
            out[i] += scale * c
    return _strip(out)


# -- PolyX ---------------------------------------------------------------------


class PolyX:
    """Dense integer polynomial; ``coeffs[i]`` is the coefficient of ``x**i``.

    Trailing zeros are stripped, so equal polynomials have equal tuples and the
    zero polynomial has an empty tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        self.coeffs = tuple(_strip([int(c) for c in coeffs]))

    @classmethod
    def _raw(cls, coeffs: list[int]) -> PolyX:
        # caller guarantees ints with no trailing zero
        p = object.__new__(cls)
        p.coeffs = tuple(coeffs)
        return p

    @classmethod
    def const(cls, c: int) -> PolyX:
        return cls._raw([c] if c else [])

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> PolyX:
        return cls._raw([0] * k + [c] if c else [])

    # container protocol
    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i: int) -> int:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, PolyX):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ())
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"PolyX({list(self.coeffs)})"

    def __str__(self) -> str:
        return self.format("x")

    def format(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            mag = abs(c)
            body = str(mag) if (mag != 1 or not mono) else ""
            if body and mono:
                body += "*"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body + mono))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, term in parts[1:]:
            out += f" {sign} {term}"
        return out

    @property
    def degree(self) -> int:
        """Degree, or -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    # arithmetic
    def __neg__(self) -> PolyX:
        return PolyX._raw([-c for c in self.coeffs])

    def __add__(self, other) -> PolyX:
        if isinstance(other, int):
            other = PolyX.const(other)
        if not isinstance(other, PolyX):
            return NotImplemented
        return PolyX._raw(_add_lists(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other) -> PolyX:
        if isinstance(other, int):
            other = PolyX.const(other)
        if not isinstance(other, PolyX):
            return NotImplemented
        return PolyX._raw(_add_lists(self.coeffs, other.coeffs, -1))

    def __rsub__(self, other) -> PolyX:
        return (-self) + other

    def __mul__(self, other) -> PolyX:
        if isinstance(other, int):
            if not other:
                return PolyX()
            return PolyX._raw([other * c for c in self.coeffs])
        if not isinstance(other, PolyX):
            return NotImplemented
        return PolyX._raw(_mul_lists(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> PolyX:
        out, base = PolyX.const(1), self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def shift(self, k: int) -> PolyX:
        """Multiply by ``x**k``."""
        if not self.coeffs or not k:
            return self
        return PolyX._raw([0] * k + list(self.coeffs))

    def div_x(self, k: int) -> PolyX:
        """Exact quotient by ``x**k``; raises :class:`NotDivisible` otherwise."""
        if any(self.coeffs[:k]):
            raise NotDivisible(k)
        return PolyX._raw(list(self.coeffs[k:]))

    def low(self, k: int) -> PolyX:
        """The part of degree < k."""
        return PolyX(self.coeffs[:k])

    def derivative(self) -> PolyX:
        return PolyX._raw(_strip([i * c for i, c in enumerate(self.coeffs)][1:]))

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def content(self) -> int:
        from math import gcd

        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
            if g == 1:
                break
        return g

    def primitive(self) -> PolyX:
        """Content-free associate with positive leading coefficient."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lead < 0:
            g = -g
        return PolyX._raw([c // g for c in self.coeffs])

    def divexact(self, other: PolyX | int) -> PolyX:
        """Exact quotient in Z[x]; raises ``ArithmeticError`` when inexact."""
        if isinstance(other, int):
            out = []
            for c in self.coeffs:
                q, r = divmod(c, other)
                if r:
                    raise ArithmeticError("inexact division by integer")
                out.append(q)
            return PolyX._raw(out)
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.coeffs:
            return self
        db = other.degree
        if other.degree == 0:
            return self.divexact(other.lead)
        rem = list(self.coeffs)
        dq = len(rem) - 1 - db
        if dq < 0:
            raise ArithmeticError("inexact polynomial division")
        lead = other.lead
        b = other.coeffs
        quo = [0] * (dq + 1)
        for i in range(dq, -1, -1):
            top = rem[i + db]
            if not top:
                continue
            q, r = divmod(top, lead)
            if r:
                raise ArithmeticError("inexact polynomial division")
            quo[i] = q
            for j in range(db + 1):
                rem[i + j] -= q * b[j]
        if any(rem):
            raise ArithmeticError("inexact polynomial division")
        return PolyX._raw(_strip(quo))

    def pseudo_rem(self, other: PolyX) -> PolyX:
        """``lead(other)**(deg self - deg other + 1) * self`` modulo ``other``."""
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        db = other.degree
        rem = list(self.coeffs)
        delta = len(rem) - 1 - db
        if delta < 0:
            return self
        lead = other.lead
        b = other.coeffs
        for _ in range(delta + 1):
            if len(rem) - 1 < db:
                rem = [c * lead for c in rem]
                continue
            top = rem[-1]
            shift = len(rem) - 1 - db
            rem = [c * lead for c in rem]
            for j in range(db + 1):
                rem[shift + j] -= top * b[j]
            rem.pop()
            _strip(rem)
        return PolyX._raw(_strip(rem))


def poly_add(a: PolyX, b: PolyX) -> PolyX:
    return a + b


def poly_mul(a: PolyX, b: PolyX) -> PolyX:
    return a * b


# -- USeries -------------------------------------------------------------------


class USeries:
    """Univariate integer power series known modulo ``t**order``.

    ``coeffs`` always has exactly ``order`` entries.  Binary operations take
    the smaller of the two orders.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[int] = (), order: int | None = None):
        cs = [int(c) for c in coeffs]
        if order is None:
            order = len(cs)
        if order < 0:
            raise ValueError("order must be nonnegative")
        cs = cs[:order] + [0] * max(0, order - len(cs))
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def _raw(cls, coeffs: list[int], order: int) -> USeries:
        s = object.__new__(cls)
        s.coeffs = tuple(coeffs)
        s.order = order
        return s

    @classmethod
    def from_poly(cls, p: PolyX, order: int) -> USeries:
        return cls(p.coeffs, order)

    @classmethod
    def one(cls, order: int) -> USeries:
        return cls([1], order)

    @classmethod
    def var(cls, order: int, k: int = 1) -> USeries:
        """The monomial ``t**k``."""
        return cls([0] * k + [1], order)

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, n):
        if isinstance(n, slice):
            return self.coeffs[n]
        if n < 0:
            raise IndexError("negative order")
        if n >= self.order:
            raise IndexError(f"coefficient t^{n} beyond truncation order {self.order}")
        return self.coeffs[n]

    def __eq__(self, other) -> bool:
        if isinstance(other, USeries):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.coeffs, self.order))

    def __repr__(self) -> str:
        return f"USeries({list(self.coeffs)}, order={self.order})"

    def truncate(self, order: int) -> USeries:
        order = min(order, self.order)
        return USeries._raw(list(self.coeffs[:order]), order)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, ``None`` if all known ones vanish."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _coerce(self, other) -> USeries:
        if isinstance(other, USeries):
            return other
        if isinstance(other, int):
            return USeries([other], self.order)
        if isinstance(other, PolyX):
            return USeries.from_poly(other, self.order)
        raise TypeError(f"cannot combine USeries with {type(other).__name__}")

    def __neg__(self) -> USeries:
        return USeries._raw([-c for c in self.coeffs], self.order)

    def __add__(self, other) -> USeries:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        n = min(self.order, other.order)
        return USeries._raw([a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])], n)

    __radd__ = __add__

    def __sub__(self, other) -> USeries:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        n = min(self.order, other.order)
        return USeries._raw([a - b for a, b in zip(self.coeffs[:n], other.coeffs[:n])], n)

    def __rsub__(self, other) -> USeries:
        return (-self) + other

    def __mul__(self, other) -> USeries:
        if isinstance(other, int):
            return USeries._raw([other * c for c in self.coeffs], self.order)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        n = min(self.order, other.order)
        prod = _mul_lists(_strip(list(self.coeffs[:n])), _strip(list(other.coeffs[:n])))
        prod = prod[:n]
        return USeries._raw(prod + [0] * (n - len(prod)), n)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> USeries:
        out, base = USeries.one(self.order), self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def shift(self, k: int) -> USeries:
        """Multiply by ``t**k`` (the order is unchanged)."""
        if k <= 0:
            return self
        cs = ([0] * k + list(self.coeffs))[: self.order]
        return USeries._raw(cs, self.order)

    def inv_unit(self) -> USeries:
        """Inverse of a series with constant term +1 or -1."""
        if self.order == 0:
            return self
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise NotAUnit(f"constant term {c0} is not a unit")
        n = self.order
        a = self.coeffs
        support = [(k, a[k]) for k in range(1, n) if a[k]]
        inv = [0] * n
        inv[0] = c0
        for m in range(1, n):
            acc = 0
            for k, ak in support:
                if k > m:
                    break
                acc += ak * inv[m - k]
            inv[m] = -c0 * acc
        return USeries._raw(inv, n)

    def div_poly(self, p: PolyX) -> USeries:
        """Exact series quotient by a polynomial with nonzero constant term.

        Raises :class:`NonIntegral` at the first order whose coefficient is not
        an integer.
        """
        c0 = p[0]
        if not c0:
            raise ZeroDivisionError("polynomial has zero constant term")
        n = self.order
        out = [0] * n
        b = p.coeffs
        for m in range(n):
            acc = self.coeffs[m]
            for k in range(1, min(m, len(b) - 1) + 1):
                acc -= b[k] * out[m - k]
            q, r = divmod(acc, c0)
            if r:
                raise NonIntegral(m)
            out[m] = q
        return USeries._raw(out, n)

    def derivative(self) -> USeries:
        if self.order == 0:
            return self
        return USeries._raw([i * c for i, c in enumerate(self.coeffs)][1:], self.order - 1)


# -- BiSeries ------------------------------------------------------------------


class BiSeries:
    """Power series in ``z`` with :class:`PolyX` coefficients in ``x``.

    ``coeffs[n]`` is the coefficient of ``z**n``; exactly ``order`` entries are
    stored.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[PolyX] = (), order: int | None = None):
        cs = [c if isinstance(c, PolyX) else PolyX(c) for c in coeffs]
        if order is None:
            order = len(cs)
        if order < 0:
            raise ValueError("order must be nonnegative")
        cs = cs[:order] + [PolyX()] * max(0, order - len(cs))
        self.coeffs = tuple(cs)
        self.order = order

    @classmethod
    def _raw(cls, coeffs: list[PolyX], order: int) -> BiSeries:
        s = object.__new__(cls)
        s.coeffs = tuple(coeffs)
        s.order = order
        return s

    @classmethod
    def zero(cls, order: int) -> BiSeries:
        return cls._raw([PolyX()] * order, order)

    @classmethod
    def one(cls, order: int) -> BiSeries:
        return cls([PolyX.const(1)], order)

    @classmethod
    def z_poly(cls, coeffs: Sequence[int], order: int) -> BiSeries:
        """Constant-in-x series from integer ``z``-coefficients."""
        return cls([PolyX.const(c) for c in coeffs], order)

    @classmethod
    def from_useries(cls, s: USeries) -> BiSeries:
        return cls._raw([PolyX.const(c) for c in s.coeffs], s.order)

    def __len__(self) -> int:
        return self.order

    def __getitem__(self, n: int) -> PolyX:
        if n < 0 or n >= self.order:
            raise IndexError(f"coefficient z^{n} beyond truncation order {self.order}")
        return self.coeffs[n]

    def __eq__(self, other) -> bool:
        if isinstance(other, BiSeries):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.coeffs, self.order))

    def __repr__(self) -> str:
        body = ", ".join(f"z^{n}:({p})" for n, p in enumerate(self.coeffs) if p)
        return f"BiSeries({{{body}}}, order={self.order})"

    def truncate(self, order: int) -> BiSeries:
        order = min(order, self.order)
        return BiSeries._raw(list(self.coeffs[:order]), order)

    def x_degree(self) -> int:
        return max((p.degree for p in self.coeffs), default=-1)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def first_difference(self, other: BiSeries) -> int | None:
        """Smallest z-order where the two series differ, within the common order."""
        for n, (a, b) in enumerate(zip(self.coeffs, other.coeffs)):
            if a != b:
                return n
        return None

    def _coerce(self, other) -> BiSeries:
        if isinstance(other, BiSeries):
            return other
        if isinstance(other, int):
            return BiSeries([PolyX.const(other)], self.order)
        if isinstance(other, USeries):
            return BiSeries.from_useries(other)
        if isinstance(other, PolyX):
            return BiSeries([other], self.order)
        raise TypeError(f"cannot combine BiSeries with {type(other).__name__}")

    def __neg__(self) -> BiSeries:
        return BiSeries._raw([-p for p in self.coeffs], self.order)

    def __add__(self, other) -> BiSeries:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        n = min(self.order, other.order)
        return BiSeries._raw([a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])], n)

    __radd__ = __add__

    def __sub__(self, other) -> BiSeries:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        n = min(self.order, other.order)
        return BiSeries._raw([a - b for a, b in zip(self.coeffs[:n], other.coeffs[:n])], n)

    def __rsub__(self, other) -> BiSeries:
        return (-self) + other

    def __mul__(self, other) -> BiSeries:
        if isinstance(other, int):
            return BiSeries._raw([p * other for p in self.coeffs], self.order)
        if isinstance(other, PolyX):
            return BiSeries._raw([p * other for p in self.coeffs], self.order)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return bs_mul(self, other)

    __rmul__ = __mul__

    def mul_x(self, k: int) -> BiSeries:
        return BiSeries._raw([p.shift(k) for p in self.coeffs], self.order)

    def mul_z(self, k: int) -> BiSeries:
        if k <= 0:
            return self
        cs = ([PolyX()] * k + list(self.coeffs))[: self.order]
        return BiSeries._raw(cs, self.order)

    def div_x(self, k: int) -> BiSeries:
        return bs_div_x(self, k)

    def eval_x0(self) -> BiSeries:
        return bs_eval_x0(self)

    def coeff_x(self, k: int) -> BiSeries:
        return bs_coeff_x(self, k)

    def inv_unit(self) -> BiSeries:
        return bs_inv_unit(self)

    def x_derivative(self) -> BiSeries:
        return BiSeries._raw([p.derivative() for p in self.coeffs], self.order)

    def to_useries(self) -> USeries:
        """Series of the constant terms (the series must be constant in x)."""
        for n, p in enumerate(self.coeffs):
            if p.degree > 0:
                raise ValueError(f"series depends on x at z^{n}")
        return USeries._raw([p[0] for p in self.coeffs], self.order)

    def evaluate_x(self, xs: USeries) -> USeries:
        """Substitute a z-series with zero constant term for ``x``.

        The result is known to ``min(self.order, xs.order)``.
        """
        order = min(self.order, xs.order)
        if order and xs.coeffs[0]:
            raise ValueError("substituted series must have zero constant term")
        xs = xs.truncate(order)
        maxdeg = max((p.degree for p in self.coeffs[:order]), default=0)
        powers = [USeries.one(order)]
        for _ in range(maxdeg):
            powers.append(powers[-1] * xs)
        acc = [0] * order
        for n, p in enumerate(self.coeffs[:order]):
            for d, c in enumerate(p.coeffs):
                if not c:
                    continue
                pw = powers[d].coeffs
                # x^d has valuation >= d, so only orders n + d.. contribute
                for m in range(d, order - n):
                    v = pw[m]
                    if v:
                        acc[n + m] += c * v
        return USeries._raw(acc, order)


def bs_mul(a: BiSeries, b: BiSeries) -> BiSeries:
    """Truncated Cauchy product; the result has order ``min(a.order, b.order)``."""
    n = min(a.order, b.order)
    ac = [p.coeffs for p in a.coeffs[:n]]
    bc = [p.coeffs for p in b.coeffs[:n]]
    nz_a = [i for i in range(n) if ac[i]]
    nz_b = [j for j in range(n) if bc[j]]
    out: list[list[int]] = [[] for _ in range(n)]
    for i in nz_a:
        ai = ac[i]
        for j in nz_b:
            if i + j >= n:
                break
            out[i + j] = _add_lists(out[i + j], _mul_lists(ai, bc[j]))
    return BiSeries._raw([PolyX._raw(c) for c in out], n)


def bs_inv_unit(a: BiSeries) -> BiSeries:
    """Inverse of a series whose ``z**0`` coefficient is the constant +1 or -1."""
    n = a.order
    if n == 0:
        return a
    c0 = a.coeffs[0]
    if c0.degree != 0 or c0.lead not in (1, -1):
        raise NotAUnit(f"z^0 coefficient {c0} is not +1 or -1")
    s = c0.lead
    support = [(k, a.coeffs[k]) for k in range(1, n) if a.coeffs[k]]
    inv: list[PolyX] = [PolyX()] * n
    inv[0] = c0
    for m in range(1, n):
        acc: list[int] = []
        for k, ak in support:
            if k > m:
                break
            if inv[m - k]:
                acc = _add_lists(acc, _mul_lists(ak.coeffs, inv[m - k].coeffs))
        inv[m] = PolyX._raw([-s * c for c in acc])
    return BiSeries._raw(inv, n)


def bs_div_x(a: BiSeries, k: int) -> BiSeries:
    """Exact division by ``x**k``; :class:`NotDivisible` names the first bad z-order."""
    out = []
    for n, p in enumerate(a.coeffs):
        if any(p.coeffs[:k]):
            raise NotDivisible(k, n)
        out.append(PolyX._raw(list(p.coeffs[k:])))
    return BiSeries._raw(out, a.order)


def bs_eval_x0(a: BiSeries) -> BiSeries:
    return bs_coeff_x(a, 0)


def bs_coeff_x(a: BiSeries, k: int) -> BiSeries:
    """The coefficient of ``x**k``, as a series constant in x."""
    return BiSeries._raw([PolyX.const(p[k]) for p in a.coeffs], a.order)


def us_compose_cube(f: USeries, prefactor_z: bool = True) -> BiSeries:
    """``z + z*f(z**3)`` (or ``f(z**3)`` when ``prefactor_z`` is false).

    Known terms of ``f`` up to ``t**(m-1)`` fix the result through ``z**(3m)``
    with the prefactor and ``z**(3m-1)`` without it.
    """
    m = f.order
    if prefactor_z:
        order = 3 * m + 1
        cs = [0] * order
        if order > 1:
            cs[1] = 1
        for n, c in enumerate(f.coeffs):
            cs[3 * n + 1] += c
    else:
        order = 3 * m
        cs = [0] * order
        for n, c in enumerate(f.coeffs):
            cs[3 * n] = c
    return BiSeries.z_poly(cs, order)


def us_strip_cube(w0: BiSeries | USeries) -> USeries:
    """Inverse of :func:`us_compose_cube`: recover ``f`` from ``z + z*f(z**3)``.

    Raises :class:`BadSupport` if ``w0 - z`` has a term at an order not
    congruent to 1 mod 3.
    """
    if isinstance(w0, BiSeries):
        w0 = w0.to_useries()
    cs = list(w0.coeffs)
    if len(cs) > 1:
        cs[1] -= 1
    for n, c in enumerate(cs):
        if c and n % 3 != 1:
            raise BadSupport(n)
    count = (w0.order + 1) // 3
    return USeries(list(islice(cs[1::3], count)), count)
