import pytest

from trienum.algebraic import (
    BiPoly,
    DataFormatError,
    ResidualNonzero,
    discriminant_y,
    factor_univariate,
    load_equation,
    load_polynomial,
    resultant_y,
    series_from_equation,
    singular_candidates,
    verify_algebraic,
)
from trienum.asymptotics import NoPositiveRoot, isolate_smallest_positive_root, smallest_positive_root
from trienum.census import census
from trienum.series import PolyX, USeries

ORDER = 40


@pytest.mark.parametrize("tag", ["F", "G", "H", "K"])
def test_census_annihilates_equation(tag):
    q = load_equation(tag)
    s = census(tag, ORDER).series
    assert verify_algebraic(q, s).ok


def test_trivial_equation():
    q = BiPoly.y_minus(PolyX([0, 1]))
    assert verify_algebraic(q, USeries([0, 1], 6)).ok


def test_K_equation_shape():
    q = load_equation("K")
    assert q.y_degree == 6
    assert q.content() == 1


@pytest.mark.parametrize("tag", ["F", "G", "H", "K"])
def test_newton_series_matches_solver(tag):
    q = load_equation(tag)
    assert series_from_equation(q, ORDER + 1) == census(tag, ORDER).series


def test_newton_needs_simple_root():
    with pytest.raises(ValueError):
        series_from_equation(BiPoly([[0, 1], [2]]), 5)
    with pytest.raises(ValueError):
        series_from_equation(BiPoly([[1], [1]]), 5)


def test_fault_is_localized():
    q = load_equation("K")
    terms = q.terms()
    terms[(2, 1)] = terms.get((2, 1), 0) + 1
    bad = BiPoly.from_terms(terms)
    with pytest.raises(ResidualNonzero) as info:
        verify_algebraic(bad, census("K", ORDER).series)
    assert info.value.order == 21
    assert "P_2" in info.value.hint and "t^1" in info.value.hint
    report = verify_algebraic(bad, census("K", ORDER).series, strict=False)
    assert report.first_nonzero == 21


def test_text_roundtrip(tmp_path):
    q = load_equation("H")
    (tmp_path / "eq_H.txt").write_text(q.to_text("H equation"))
    assert load_equation("H", tmp_path) == q


def test_malformed_data(tmp_path):
    (tmp_path / "eq_F.txt").write_text("1 2\n")
    with pytest.raises(DataFormatError):
        load_equation("F", tmp_path)
    (tmp_path / "eq_F.txt").write_text("1 a 3\n")
    with pytest.raises(DataFormatError):
        load_equation("F", tmp_path)
    with pytest.raises(DataFormatError):
        load_polynomial("eq_G")


def test_normalized_sign_and_content():
    q = BiPoly([[0, 2], [-4], [0, -6]]).normalized()
    assert q == BiPoly([[0, -1], [2], [0, 3]])


def test_resultant_and_discriminant_y():
    t = PolyX([0, 1])
    assert resultant_y(BiPoly([-t, PolyX(), PolyX.const(1)]), BiPoly([[-1], [1]])) == PolyX([1, -1])
    assert discriminant_y(BiPoly([-t, PolyX(), PolyX.const(1)])) == PolyX([0, 4])


def test_disc_H_divisible_by_rH():
    d = discriminant_y(load_equation("H"))
    r = load_polynomial("H")
    _, facs = factor_univariate(d)
    assert any(f == r or f == -r for f, _ in facs)


def test_disc_K_contains_rK():
    d = discriminant_y(load_equation("K"))
    r = load_polynomial("K")
    _, facs = factor_univariate(d)
    assert any(f == r or f == -r for f, _ in facs)


def test_candidates_for_F():
    root = smallest_positive_root(singular_candidates(load_equation("F")))
    assert root.exact is not None and root.exact * 27 == 2


def test_candidates_for_linear_equation():
    r = singular_candidates(BiPoly.y_minus(PolyX([0, 1])))
    with pytest.raises(NoPositiveRoot):
        isolate_smallest_positive_root(r)
