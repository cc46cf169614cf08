from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from polyknots.construct import (
    consistent_pattern,
    default_basis,
    exact_det,
    exact_rank,
    height_by_intervals,
    height_by_linear_system,
    height_system,
    lift_stratum,
    numeric_rank,
    obstruction_deg6,
    realizes,
)
from polyknots.diagram import CrossingPattern, count_changes, extract_diagram, visit_sequence
from polyknots.embedding import PolyKnot, in_pd_tilde, is_embedding
from polyknots.errors import InfeasibleRuns, LiftFailed, NoSolution, VerificationFailed, WrongShape
from polyknots.invariants import identify
from polyknots.poly import parse
from polyknots.resultant import double_points

F3, G3 = parse("t^3 - 3t"), parse("t^4 - 4t^2")
F6, G6 = parse("2(t - 2)(t + 4)(t^2 - 11)"), parse("t (t^2 - 6)(t^2 - 16)")
TREFOIL = CrossingPattern.from_string("+-+")
PATTERN_5_2 = CrossingPattern.from_string("+-+-+")
NODES6 = double_points(F6, G6)
patterns5 = st.lists(st.sampled_from([1, -1]), min_size=5, max_size=5)
slacks5 = st.lists(st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=8), min_size=5, max_size=5)


def test_exact_rank_and_det_match_sympy():
    m = [[Fraction(1), Fraction(2), Fraction(3)], [Fraction(2), Fraction(4), Fraction(6)], [Fraction(1, 2), Fraction(0), Fraction(-1)]]
    assert exact_rank(m) == sympy.Matrix(m).rank() == 2
    n = [[Fraction(2), Fraction(1, 3)], [Fraction(-1), Fraction(5)]]
    assert exact_det(n) == Fraction(31, 3)


def test_numeric_rank_survives_bad_column_scaling():
    m = [[1e-12, 1.0], [2e-12, 3.0]]
    assert numeric_rank(m) == 2
    assert numeric_rank([[1.0, 2.0], [2.0, 4.0]]) == 1


def test_intervals_on_shastri():
    h = height_by_intervals(F3, G3, TREFOIL)
    nodes = double_points(F3, G3)
    r = count_changes(visit_sequence(nodes, TREFOIL.e))
    assert r == 5
    assert h.degree == r
    k = PolyKnot(F3, G3, h)
    assert realizes(k, TREFOIL)
    assert identify(extract_diagram(k)).name in ("3_1", "3_1*")


def test_intervals_separators_avoid_crossing_parameters():
    h = height_by_intervals(F3, G3, TREFOIL)
    for d in double_points(F3, G3):
        assert abs(h.evalf(d.s)) > 1e-3 and abs(h.evalf(d.t)) > 1e-3


def test_intervals_positive_on_over_visits():
    h = height_by_intervals(F6, G6, PATTERN_5_2)
    for d, e in zip(NODES6, PATTERN_5_2.e):
        over, under = (d.t, d.s) if e > 0 else (d.s, d.t)
        assert h.evalf(over) > 0 > h.evalf(under)


def test_descending_pattern_gives_unknot():
    k = PolyKnot(F3, G3, height_by_intervals(F3, G3, CrossingPattern.from_string("---")))
    assert k.h.degree == 1
    assert identify(extract_diagram(k)).name == "0_1"


def test_5_2_pattern_realizes_5_2():
    k = PolyKnot(F6, G6, height_by_intervals(F6, G6, PATTERN_5_2))
    assert identify(extract_diagram(k)).name in ("5_2", "5_2*")


def test_infeasible_runs():
    # a node (s, t) and a fake node sharing the parameter s with the opposite label
    nodes = double_points(F3, G3)
    clash = [nodes[0], type(nodes[0])(nodes[0].s, nodes[1].t, 0, 0, nodes[0].s_box, nodes[1].t_box)]
    with pytest.raises(InfeasibleRuns):
        height_by_intervals(F3, G3, CrossingPattern((1, -1)), nodes=clash)


def test_pattern_length_must_match():
    with pytest.raises(ValueError):
        height_by_intervals(F3, G3, CrossingPattern.from_string("+-"))


def test_linear_system_on_shastri():
    h = height_by_linear_system(F3, G3, TREFOIL)
    assert h.degree <= 5
    k = PolyKnot(F3, G3, h)
    assert realizes(k, TREFOIL)
    ki = PolyKnot(F3, G3, height_by_intervals(F3, G3, TREFOIL))
    assert extract_diagram(k).gauss_key == extract_diagram(ki).gauss_key


def test_linear_system_meets_every_equation():
    h = height_by_linear_system(F3, G3, CrossingPattern.from_string("+-+", [1, 2, 3]))
    for d, target in zip(double_points(F3, G3), (1, -2, 3)):
        assert h.evalf(d.t) - h.evalf(d.s) == pytest.approx(target, abs=1e-9)


def test_default_basis_has_full_row_rank():
    basis = default_basis(F3)
    assert basis == (5, 4, 3, 2, 1)
    system = height_system(double_points(F3, G3), TREFOIL, basis)
    assert exact_rank(system.matrix) == 3
    system6 = height_system(NODES6, PATTERN_5_2, default_basis(F6))
    assert exact_rank(system6.matrix) == 5


def test_minimal_norm_solution():
    system = height_system(double_points(F3, G3), TREFOIL, default_basis(F3))
    h = height_by_linear_system(F3, G3, TREFOIL)
    coeffs = np.array([float(h.coeff(k)) for k in system.basis])
    ref = np.linalg.pinv(system.as_float()) @ np.array([float(x) for x in system.rhs])
    assert coeffs == pytest.approx(ref, rel=1e-9, abs=1e-12)


def test_inconsistent_basis_raises_no_solution():
    # the middle node has s = -t, where t^2 - s^2 vanishes but the slack does not
    with pytest.raises(NoSolution) as err:
        height_by_linear_system(F3, G3, TREFOIL, basis=(2,))
    assert err.value.rank < err.value.augmented_rank


def test_pattern_not_realized_raises_verification_failed():
    # one basis monomial for three prescribed differences
    with pytest.raises((VerificationFailed, NoSolution)):
        height_by_linear_system(F3, G3, CrossingPattern.from_string("+++"), basis=(1,))


def test_zero_slacks_rejected():
    with pytest.raises(ValueError):
        CrossingPattern.from_string("+-+", [0, 0, 0])


def test_obstruction_on_5_2_projection():
    res = obstruction_deg6(F6, G6, PATTERN_5_2)
    assert res.crossings == 5
    assert res.obstructed
    assert res.det_if_square != 0 and res.coarse_det != 0
    assert (res.det_if_square > 0) == (res.coarse_det > 0)
    assert res.expansion_holds
    assert res.ranks == (4, 5)


def test_obstruction_expansion_with_alternating_signs():
    res = obstruction_deg6(F6, G6, PATTERN_5_2)
    # sum_j (-1)^(j+5) e_j r_j det(A_j), 1-based j, with e_j = (-1)^(j+1), equals sum r_j det(A_j)
    assert res.det_if_square == sum(res.minors)


def test_consistent_rhs_flips_verdict():
    pattern = consistent_pattern(F6, G6, (1, -3, 2, 5))
    res = obstruction_deg6(F6, G6, pattern)
    assert not res.obstructed
    assert res.det_if_square == 0


def test_obstruction_json():
    data = obstruction_deg6(F6, G6, PATTERN_5_2).to_json()
    assert data["obstructed"] is True
    assert data["det"] == "nonzero"
    assert data["rank"] == [4, 5]


@pytest.mark.parametrize("f,g", [(F3, G3), (parse("t^4 - 5t^2"), parse("t^5 - 7t^3 + t"))])
def test_obstruction_wrong_shape(f, g):
    with pytest.raises(WrongShape):
        obstruction_deg6(f, g, CrossingPattern.from_string("+" * len(double_points(f, g))))


@settings(max_examples=25)
@given(patterns5, slacks5, st.integers(0, 4), st.fractions(min_value=Fraction(1, 8), max_value=8, max_denominator=8))
def test_obstruction_det_is_linear_in_each_slack(e, r, j, lam):
    base = obstruction_deg6(F6, G6, CrossingPattern(tuple(e), tuple(r)))
    r2 = list(r)
    r2[j] *= lam
    scaled = obstruction_deg6(F6, G6, CrossingPattern(tuple(e), tuple(r2)))
    assert base.minors == scaled.minors
    assert base.expansion_holds and scaled.expansion_holds
    # det = sum_j sign_j e_j r_j det(A_j): only the j-th term moves
    n = 5
    term = (-1) ** (j + n - 1) * e[j] * r[j] * base.minors[j]
    assert scaled.det_if_square - base.det_if_square == term * (lam - 1)


def test_lift_shastri_to_6():
    k = PolyKnot(F3, G3, parse("t^5 - 10t"))
    res = lift_stratum(k, 6)
    assert in_pd_tilde(res.knot) == 6
    assert is_embedding(res.knot)
    assert identify(extract_diagram(res.knot)).name == "3_1"
    assert res.epsilon > 0


def test_lift_unknot_keeps_empty_diagram():
    res = lift_stratum(PolyKnot.from_strings("t", "t^2", "t^3 + t"), 4)
    assert in_pd_tilde(res.knot) == 4
    assert identify(extract_diagram(res.knot)).name == "0_1"


def test_lift_of_twisted_cubic_to_even_gap_fails():
    # (1 + eps t)(t, t^2, t^3) meets itself at t = 0 and t = -1/eps for every eps
    with pytest.raises(LiftFailed):
        lift_stratum(PolyKnot.from_strings("t", "t^2", "t^3"), 4)


def test_lift_requires_higher_degree():
    with pytest.raises(ValueError):
        lift_stratum(PolyKnot(F3, G3, parse("t^5 - 10t")), 5)
