import warnings

import pytest
from hypothesis import given, settings, strategies as st

from trienum.equations import (
    FamilyTag,
    IdentityViolation,
    SolvedFamily,
    degree_bound_violation,
    first_excess,
    first_negative,
    identity_suite,
    residual,
    solve,
    solve_S,
    solve_T,
)
from trienum.series import BiSeries, bs_div_x


def w0_coeffs(sol):
    return [sol.w0[n][0] for n in range(sol.order)]


def test_S_low_orders():
    assert w0_coeffs(solve_S(5)) == [0, 1, 0, 0, 1]
    assert w0_coeffs(solve_S(11)) == [0, 1, 0, 0, 1, 0, 0, 4, 0, 0, 24]


@pytest.mark.parametrize("tag", list(FamilyTag))
def test_link_map_term(tag):
    sol = solve(tag, 10)
    assert sol.series[1].coeffs == (1,)
    assert sol.series[0].is_zero()


def test_T_root_matches_G():
    # G = G*/(1 - 2t) = t^2 + 5t^3 + 29t^4 + ...
    w = w0_coeffs(solve("T", 14))
    assert w[1] == 1
    assert [w[3 * k + 1] for k in range(1, 5)] == [0, 1, 5, 29]


def test_U_root_matches_H():
    w = w0_coeffs(solve("U", 20))
    assert [w[3 * k + 1] for k in range(1, 6)] == [0, 0, 0, 1, 7]


def test_V_root():
    w = w0_coeffs(solve("V", 40))
    nonzero = {n: c for n, c in enumerate(w) if c}
    assert nonzero == {1: 1, 31: 1, 34: 8, 37: 45}


def test_kernel_division_on_solution():
    S = solve("S", 10).series
    bs_div_x(S - S.eval_x0(), 1)  # must not raise


@pytest.mark.parametrize("tag", list(FamilyTag))
def test_residual_vanishes(tag):
    assert residual(solve(tag, 61)) is None


def test_residual_detects_perturbation():
    sol = solve("T", 20)
    rows = list(sol.series.coeffs)
    rows[7] = rows[7] + 1
    bad = SolvedFamily.from_series("T", BiSeries(rows, sol.order))
    assert residual(bad) == 7


def test_solve_validates_order():
    with pytest.raises(ValueError):
        solve_T(1)


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(list(FamilyTag)), st.integers(2, 60), st.integers(2, 60))
def test_truncation_coherence(tag, a, b):
    lo, hi = sorted((a, b))
    assert solve(tag, hi).series.truncate(lo) == solve(tag, lo).series


def test_cache_returns_fresh_solves_for_smaller_orders():
    big = solve("S", 40)
    assert solve("S", 12).series == solve_S(12).series
    assert solve("S", 40) is big or solve("S", 40).series == big.series


# -- sanity: nonnegativity, degree bound, containment --------------------------

ORDER = 92


@pytest.mark.parametrize("tag", list(FamilyTag))
def test_nonnegative_and_degree_bound(tag):
    sol = solve(tag, ORDER)
    assert first_negative(sol.series) is None
    assert degree_bound_violation(sol.series) is None


@pytest.mark.parametrize("lower,upper", [("V", "U"), ("U", "T"), ("T", "S")])
def test_containment_chain(lower, upper):
    assert first_excess(solve(lower, ORDER).series, solve(upper, ORDER).series) is None


def test_first_excess_reports_position():
    a = BiSeries.z_poly([0, 1, 3], 3)
    b = BiSeries.z_poly([0, 1, 2], 3)
    assert first_excess(a, b) == (2, 0)
    assert first_negative(-a) == (1, 0)


# -- identity suites --------------------------------------------------------------


@pytest.mark.parametrize("tag", list(FamilyTag))
def test_identity_suite_holds(tag):
    report = identity_suite(solve(tag, 41))
    assert report.ok
    assert report.order == 41
    assert report.checks


def test_V_suite_names_both_checks():
    names = identity_suite(solve("V", 41)).checks
    assert "V>=4,>=4 decomposition" in names
    assert "V = z + (z/x)(V>=2 - V2 - V3 - V4)" in names


def test_U_suite_covers_U3_bijection():
    names = identity_suite(solve("U", 30)).checks
    assert any("U3" in k for k in names)
    assert any("(1-z^3)" in k for k in names)


def test_V_suite_below_first_K_term():
    # V(0) = z up to z^30
    assert identity_suite(solve("V", 60), order=31).ok


def test_zero_series_violates():
    with pytest.raises(IdentityViolation) as info:
        identity_suite(BiSeries.zero(20))
    assert info.value.order == 1


def test_non_strict_warns():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        report = identity_suite(BiSeries.zero(20), strict=False)
    assert not report.ok
    assert caught


def test_suite_detects_corrupted_T():
    sol = solve("T", 30)
    rows = list(sol.series.coeffs)
    rows[10] = rows[10] + 1
    with pytest.raises(IdentityViolation):
        identity_suite(BiSeries(rows, 30), tag="T")
