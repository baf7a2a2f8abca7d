import flint
from hypothesis import given, settings, strategies as st

from trienum.mpoly import MPoly, factor
from trienum.resultant import (
    discriminant,
    mpoly_discriminant,
    mpoly_resultant,
    pseudo_remainder,
    resultant,
    sylvester_resultant,
)
from trienum.series import PolyX

small = st.integers(-50, 50)
nonconst = st.lists(small, min_size=2, max_size=8).filter(lambda c: c[-1] != 0)


@settings(max_examples=200)
@given(nonconst, nonconst)
def test_matches_sylvester(a, b):
    assert resultant(a, b) == sylvester_resultant(a, b)


@settings(max_examples=100)
@given(nonconst, nonconst)
def test_matches_flint(a, b):
    assert resultant(a, b) == int(flint.fmpz_poly(a).resultant(flint.fmpz_poly(b)))


@settings(max_examples=100)
@given(nonconst)
def test_discriminant_matches_flint(q):
    assert discriminant(q) == int(flint.fmpz_poly(q).discriminant())


@given(nonconst, nonconst, nonconst)
def test_multiplicative(a, b, c):
    ab = (PolyX(a) * PolyX(b)).coeffs
    assert resultant(ab, c) == resultant(a, c) * resultant(b, c)


@given(nonconst, nonconst, nonconst)
def test_common_factor_gives_zero(f, a, b):
    fa, fb = (PolyX(f) * PolyX(a)).coeffs, (PolyX(f) * PolyX(b)).coeffs
    assert resultant(fa, fb) == 0


def test_quadratic_discriminant():
    assert discriminant([3, 5, 7]) == 5 * 5 - 4 * 7 * 3


def test_polynomial_coefficients():
    # coefficients in Z[t], as lists over y
    t = PolyX([0, 1])
    one = PolyX.const(1)
    assert resultant([-t, PolyX(), one], [-one, one]) == PolyX([1, -1])
    assert discriminant([-t, PolyX(), one]) == PolyX([0, 4])


def test_zero_polynomial():
    assert resultant([], [1, 2]) == 0


def test_pseudo_remainder():
    # x^2 + 1 by 2x + 1: 4(x^2+1) = (2x - 1)(2x + 1) + 5
    assert pseudo_remainder([1, 0, 1], [1, 2]) == [5]


def test_mpoly_resultant_and_factor():
    x, y, t = MPoly.gens(("x", "y", "t"))
    p = y * y - t
    q = y - x
    r = mpoly_resultant(p, q, "y")
    assert r == x * x - t
    assert mpoly_discriminant(p, "y") == 4 * t
    content, facs = factor((x - t) * (x + y) ** 2 * 6)
    assert content == 6
    assert sorted(e for _, e in facs) == [1, 2]


def test_mpoly_resultant_matches_flint():
    x, y, t = MPoly.gens(("x", "y", "t"))
    p = 2 * y**3 * t + y * x - t**2 + 3
    q = y**2 - x * y * t + 5 * x
    fr = p.to_flint().resultant(q.to_flint(), "y")
    assert MPoly.from_flint(fr, ("x", "y", "t")) == mpoly_resultant(p, q, "y")
