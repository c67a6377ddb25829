from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hypat.model import CountStats
from hypat.relevance import (FLOAT_TOL, Measure, compare, is_rational, score,
                             score_float, score_pair, solve_min_support,
                             support_threshold, upper_bound)

MEASURES = list(Measure)


def S(np_, nn, Np, Nn, m=Measure.FSCORE):
    return score(m, CountStats(np_, nn), Np, Nn)


def test_fscore_iris_versicolor_row():
    assert S(49, 3, 50, 100).value == Fraction(98, 102)


def test_fscore_german_good_row():
    v = S(691, 277, 700, 300).value
    assert v == Fraction(1382, 1668)
    assert round(float(v), 3) == 0.829


def test_fscore_zero_coverage_is_zero():
    assert S(0, 5, 10, 20).value == 0
    assert S(0, 0, 10, 20).value == 0


def test_fscore_toy6():
    assert S(3, 1, 3, 3).value == Fraction(6, 7)


def test_upper_bound_perfect_pattern():
    assert upper_bound(Measure.FSCORE, CountStats(50, 7), 50, 100).value == 1


def test_upper_bound_two_thirds_support():
    ub = upper_bound(Measure.FSCORE, CountStats(2, 5), 3, 9)
    assert ub.value == Fraction(4, 5)


def test_upper_bound_support_difference():
    ub = upper_bound(Measure.SUPPORT_DIFF, CountStats(4, 3), 10, 10)
    assert ub.value == Fraction(2, 5)


def test_solve_min_support_fscore():
    t = S(3, 1, 3, 3)  # 6/7
    assert solve_min_support(Measure.FSCORE, t) == Fraction(3, 4)
    one = S(3, 0, 3, 3)
    assert solve_min_support(Measure.FSCORE, one) == 1
    half = S(1, 1, 2, 2)  # F = 1/2
    assert solve_min_support(Measure.FSCORE, half) == Fraction(1, 3)


def test_solve_min_support_above_maximum_prunes_everything():
    t = score(Measure.FSCORE, CountStats(3, 0), 3, 3)
    above = type(t)(t.measure, Fraction(3, 2), t.stats, 3, 3)
    assert solve_min_support(Measure.FSCORE, above) > 1


def test_compare_exact_cross_multiplication():
    a = S(49, 3, 50, 100)   # 98/102
    b = S(48, 2, 50, 100)   # 96/100
    assert compare(a, b) == 1
    assert compare(b, a) == -1
    assert compare(a, S(49, 3, 50, 100)) == 0


def test_compare_spec_example():
    assert compare(S(2, 0, 3, 3), S(1, 0, 3, 3)) == 1


def test_compare_rejects_cross_measure():
    with pytest.raises(ValueError):
        compare(S(1, 0, 2, 2), S(1, 0, 2, 2, m=Measure.CHI_SQUARE))


counts_st = st.tuples(st.integers(1, 40), st.integers(0, 40),
                      st.integers(0, 40), st.integers(0, 40))


def _totals(np_, nn, dp, dn):
    return np_, nn, np_ + dp, nn + dn


@given(counts_st, st.sampled_from(MEASURES))
def test_dual_monotonicity(counts, m):
    np_, nn, Np, Nn = _totals(*counts)
    if Nn == 0 or np_ * Nn < nn * Np:
        return  # outside the characterizing region
    base = score(m, CountStats(np_, nn), Np, Nn)
    if np_ + 1 <= Np:
        up = score(m, CountStats(np_ + 1, nn), Np, Nn)
        assert compare(up, base) >= 0
    if nn + 1 <= Nn and np_ * Nn >= (nn + 1) * Np:
        worse = score(m, CountStats(np_, nn + 1), Np, Nn)
        assert compare(worse, base) <= 0


@given(counts_st, st.sampled_from(MEASURES))
def test_upper_bound_dominates_score(counts, m):
    np_, nn, Np, Nn = _totals(*counts)
    if Nn == 0 or np_ * Nn < nn * Np:
        return
    sc = score(m, CountStats(np_, nn), Np, Nn)
    ub = upper_bound(m, CountStats(np_, nn), Np, Nn)
    assert compare(ub, sc) >= 0


@given(counts_st, st.sampled_from(MEASURES))
def test_upper_bound_is_antimonotone_in_extension(counts, m):
    np_, nn, Np, Nn = _totals(*counts)
    if np_ < 2:
        return
    wider = upper_bound(m, CountStats(np_, nn), Np, Nn)
    narrower = upper_bound(m, CountStats(np_ - 1, nn), Np, Nn)
    assert compare(narrower, wider) <= 0


@given(counts_st, st.sampled_from([Measure.FSCORE, Measure.SUPPORT_DIFF]))
def test_solve_min_support_inverts_exactly_for_rational_measures(counts, m):
    np_, nn, Np, Nn = _totals(*counts)
    if Nn == 0 or np_ * Nn < nn * Np:
        return
    target = score(m, CountStats(np_, nn), Np, Nn)
    if target.value < 0:
        return
    u = solve_min_support(m, target)
    # at the threshold the bound reaches the target; below it, it cannot
    if m == Measure.FSCORE:
        assert Fraction(2) * u / (1 + u) == target.value
    else:
        assert u == target.value


@given(counts_st, st.sampled_from([Measure.CHI_SQUARE, Measure.INFO_GAIN]))
def test_solve_min_support_inverts_numerically(counts, m):
    np_, nn, Np, Nn = _totals(*counts)
    if Nn == 0 or np_ * Nn < nn * Np or np_ == 0:
        return
    target = score(m, CountStats(np_, nn), Np, Nn)
    if target.value <= 0:
        return
    from hypat.relevance import _ub_at_support
    u = solve_min_support(m, target)
    if u > 1:
        return
    assert _ub_at_support(m, u, Np, Nn) >= target.value - 1e-9
    below = max(0.0, u - 1e-6)
    assert _ub_at_support(m, below, Np, Nn) <= target.value + 1e-9


@given(st.integers(1, 30), st.integers(0, 30))
def test_balanced_coverage_scores_zero_for_difference_measures(a, dp):
    # equal positive and negative support
    np_, Np = a, a + dp
    nn, Nn = a, a + dp
    assert score(Measure.SUPPORT_DIFF, CountStats(np_, nn), Np, Nn).value == 0
    assert score(Measure.CHI_SQUARE, CountStats(np_, nn), Np, Nn).value == pytest.approx(0, abs=FLOAT_TOL)
    assert score(Measure.INFO_GAIN, CountStats(np_, nn), Np, Nn).value == pytest.approx(0, abs=1e-9)


@given(counts_st, st.sampled_from(MEASURES))
def test_fast_kernels_match_reference(counts, m):
    np_, nn, Np, Nn = _totals(*counts)
    sc = score(m, CountStats(np_, nn), Np, Nn)
    f = score_float(m, np_, nn, Np, Nn)
    assert f == pytest.approx(float(sc.value), abs=1e-12)
    if is_rational(m):
        num, den = score_pair(m, np_, nn, Np, Nn)
        assert Fraction(num, den) == sc.value
    if Nn == 0 or np_ * Nn < nn * Np or np_ == 0:
        return
    thr = support_threshold(m, np_, nn, Np, Nn)
    ref = solve_min_support(m, sc)
    assert thr == pytest.approx(float(ref), abs=1e-9)
