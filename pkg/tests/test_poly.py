from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import sympy_real_roots
from polyknots.errors import NotDivisible, ParseError, ZeroPolynomial
from polyknots.poly import (
    MINUS_INFINITY,
    Polynomial,
    gcd,
    parse,
    real_roots,
    squarefree_decomposition,
    sturm_count,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def polys(draw, max_degree=12):
    coeffs = draw(st.lists(fractions, min_size=1, max_size=max_degree + 1))
    return Polynomial(tuple(coeffs))


def nonzero(p):
    return not p.is_zero()


def test_exact_divide():
    assert parse("t^2 - 1").exact_div(parse("t - 1")) == parse("t + 1")


def test_exact_divide_rejects_non_divisor():
    with pytest.raises(NotDivisible):
        parse("t^2 + 1").exact_div(parse("t - 1"))


def test_gcd_is_monic():
    assert gcd(parse("t^3 - t"), parse("t^2 - 1")) == parse("t^2 - 1")
    assert gcd(parse("6t^2 - 6"), parse("3t + 3")) == parse("t + 1")


def test_derivative():
    assert parse("t^4 - 4t^2").derivative() == parse("4t^3 - 8t")


def test_zero_degree_marker():
    z = Polynomial.constant(0)
    assert z.degree is MINUS_INFINITY
    assert z.degree < 0
    assert z.degree != 0
    assert parse("7").degree == 0


def test_normalization_strips_trailing_zeros():
    p = Polynomial((1, 2, 0, 0))
    assert p.coeffs == (1, 2)
    assert p.degree == 1


def test_both_text_forms_parse_the_same():
    assert parse("0,-10,0,0,0,1") == parse("t^5 - 10*t") == parse("t^5-10t")
    assert parse("t^5 - 10*t").to_text() == "0,-10,0,0,0,1"


def test_decimal_coefficients_are_exact():
    p = parse("0.00001 t^5 + 0.1")
    assert p.coeff(5) == Fraction(1, 100000)
    assert p.coeff(0) == Fraction(1, 10)


def test_factored_form():
    assert parse("2(t-2)(t+4)") == parse("2t^2 + 4t - 16")
    assert parse("-0.5 t (t^2 - 1)") == parse("-t^3/2 + t/2")


@pytest.mark.parametrize("text", ["t^", "t + * 2", "(t - 1", "x^2", "t^-1", ""])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_compose_and_scale():
    p = parse("t^2 + 1")
    assert p.compose(parse("t - 1")) == parse("t^2 - 2t + 2")
    assert p.scale(-1) == parse("-t^2 - 1")


def test_roots_simple():
    r = real_roots(parse("t^2 - 4"))
    assert r.values == pytest.approx([-2, 2], abs=1e-12)
    assert r.multiplicities == [1, 1]


def test_roots_with_multiplicity():
    r = real_roots(parse("(t - 1)^2 (t + 3)"))
    assert r.values == pytest.approx([-3, 1], abs=1e-12)
    assert r.multiplicities == [1, 2]


def test_roots_of_shastri_g_factor():
    r = real_roots(parse("t (t^2 - 6)(t^2 - 16)"))
    assert r.values == pytest.approx([-4, -6**0.5, 0, 6**0.5, 4], abs=1e-9)


def test_zero_polynomial_has_no_root_list():
    with pytest.raises(ZeroPolynomial):
        real_roots(Polynomial.constant(0))


def test_refinement_width():
    r = real_roots(parse("t^2 - 2"), refine_to=1e-20)
    assert all(root.width <= Fraction(1, 10**20) for root in r)
    assert root_contains(r[1], Fraction(2))


def root_contains(root, square):
    return root.lo * root.lo <= square <= root.hi * root.hi


@given(polys())
def test_root_count_matches_sturm(p):
    if p.is_zero():
        return
    assert len(real_roots(p)) == sturm_count(p)


@given(polys(max_degree=8))
def test_roots_match_sympy(p):
    if p.is_zero():
        return
    ours = real_roots(p)
    ref = sympy_real_roots(p)
    assert [m for _, m in ref] == ours.multiplicities
    assert ours.values == pytest.approx([v for v, _ in ref], abs=1e-9)


@given(polys())
def test_isolating_boxes_bracket_odd_roots(p):
    if p.is_zero() or p.degree < 1:
        return
    for root in real_roots(p, refine_to=1e-14):
        assert root.width <= Fraction(1, 10**14)
        if root.multiplicity % 2:
            assert p(root.lo) * p(root.hi) <= 0


@given(polys(max_degree=5).filter(nonzero), polys(max_degree=5).filter(nonzero))
def test_roots_of_product_are_union(p, q):
    pq = real_roots(p * q).values
    union = sorted(set(round(v, 8) for v in real_roots(p).values + real_roots(q).values))
    assert len(pq) == len(union)
    assert pq == pytest.approx(union, abs=1e-7)


@given(polys(max_degree=6).filter(nonzero), polys(max_degree=6).filter(nonzero))
def test_degree_of_product(p, q):
    assert (p * q).degree == p.degree + q.degree


@given(polys(max_degree=6), polys(max_degree=6).filter(nonzero))
def test_divmod_reconstructs(p, q):
    # exact_div on a multiple recovers the factor
    assert (p * q).exact_div(q) == p


@given(polys(max_degree=8), fractions)
def test_evaluation_is_exact(p, x):
    expected = sum(c * x**i for i, c in enumerate(p.coeffs))
    assert p(x) == expected


@given(polys(max_degree=8))
def test_text_round_trip(p):
    assert parse(p.to_text()) == p
    assert parse(str(p)) == p


@given(polys(max_degree=7).filter(lambda p: p.degree >= 1))
def test_squarefree_decomposition_multiplies_back(p):
    parts = squarefree_decomposition(p)
    prod = Polynomial.constant(1)
    for q, m in parts:
        prod = prod * q**m
    assert prod.monic() == p.monic()
