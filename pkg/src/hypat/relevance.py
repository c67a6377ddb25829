"""Relevance measures over coverage counts, their optimistic upper bounds,
and inversion of the pruning condition into a minimum positive-support
threshold.

All four measures increase with positive support and decrease with negative
support on the region where positive support dominates, which is what makes
upper bounds by zeroing the negative term valid.  F-score and support
difference are kept as exact rationals so that ties are detected exactly;
chi-square and information gain are floats and comparisons of those are
rounded at 1e-12.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .model import CountStats

FLOAT_TOL = 1e-12


class Measure(str, enum.Enum):
    FSCORE = "fscore"
    SUPPORT_DIFF = "suppdiff"
    CHI_SQUARE = "chi2"
    INFO_GAIN = "infogain"


RATIONAL_MEASURES = (Measure.FSCORE, Measure.SUPPORT_DIFF)


@dataclass(frozen=True)
class Score:
    measure: Measure
    value: Union[Fraction, float]
    stats: CountStats
    n_pos_total: int
    n_neg_total: int


def _chi_square(a, b, n_pos_total, n_neg_total) -> float:
    """Standard 2x2 contingency statistic; a, b may be fractional during
    bisection."""
    total = n_pos_total + n_neg_total
    n_x = a + b
    n_rest = total - n_x
    if n_x <= 0 or n_rest <= 0 or n_pos_total == 0 or n_neg_total == 0:
        return 0.0
    diff = a * n_neg_total - b * n_pos_total
    return total * diff * diff / (n_x * n_rest * n_pos_total * n_neg_total)


def _info_gain(a, b, n_pos_total, n_neg_total) -> float:
    """Mutual information (natural log) between class and coverage indicators."""
    total = n_pos_total + n_neg_total
    cells = (
        (a, n_pos_total, a + b),
        (b, n_neg_total, a + b),
        (n_pos_total - a, n_pos_total, total - a - b),
        (n_neg_total - b, n_neg_total, total - a - b),
    )
    out = 0.0
    for joint, row, col in cells:
        if joint <= 0 or row <= 0 or col <= 0:
            continue
        out += (joint / total) * math.log(joint * total / (row * col))
    return out


def _value(measure: Measure, n_pos: int, n_neg: int,
           n_pos_total: int, n_neg_total: int):
    if measure == Measure.FSCORE:
        return Fraction(2 * n_pos, n_pos_total + n_pos + n_neg)
    if measure == Measure.SUPPORT_DIFF:
        pos = Fraction(n_pos, n_pos_total)
        neg = Fraction(n_neg, n_neg_total) if n_neg_total else Fraction(0)
        return pos - neg
    if measure == Measure.CHI_SQUARE:
        return _chi_square(n_pos, n_neg, n_pos_total, n_neg_total)
    return _info_gain(n_pos, n_neg, n_pos_total, n_neg_total)


def score(measure: Measure, stats: CountStats,
          n_pos_total: int, n_neg_total: int) -> Score:
    """Relevance of a pattern with the given coverage counts.

    A zero-coverage pattern scores the measure's minimum (0 for F-score).
    """
    if n_pos_total <= 0:
        raise ValueError("n_pos_total must be positive")
    return Score(measure, _value(measure, stats.n_pos, stats.n_neg,
                                 n_pos_total, n_neg_total),
                 stats, n_pos_total, n_neg_total)


def upper_bound(measure: Measure, stats: CountStats,
                n_pos_total: int, n_neg_total: int) -> Score:
    """Optimistic bound: the measure evaluated with negative support forced
    to zero.  Anti-monotone under pattern extension since positive support
    can only shrink."""
    return Score(measure, _value(measure, stats.n_pos, 0, n_pos_total, n_neg_total),
                 CountStats(stats.n_pos, 0), n_pos_total, n_neg_total)


def compare(a: Score, b: Score) -> int:
    """-1, 0 or 1.  Exact for rational measures; rounded at 1e-12 otherwise."""
    if a.measure != b.measure:
        raise ValueError("cannot compare scores of different measures")
    if a.measure in RATIONAL_MEASURES:
        if a.value == b.value:
            return 0
        return -1 if a.value < b.value else 1
    if abs(a.value - b.value) <= FLOAT_TOL:
        return 0
    return -1 if a.value < b.value else 1


def _ub_at_support(measure: Measure, p: float, n_pos_total: int,
                   n_neg_total: int) -> float:
    """Upper bound as a function of (real-valued) positive support p."""
    if measure == Measure.FSCORE:
        return 2.0 * p / (1.0 + p)
    if measure == Measure.SUPPORT_DIFF:
        return p
    a = p * n_pos_total
    if measure == Measure.CHI_SQUARE:
        return _chi_square(a, 0.0, n_pos_total, n_neg_total)
    return _info_gain(a, 0.0, n_pos_total, n_neg_total)


def solve_min_support(measure: Measure, target: Score):
    """Least positive support whose upper bound reaches the target score.

    Patterns with positive support strictly below the result cannot match the
    target.  Exact rational for F-score and support difference; solved by
    bisection to 1e-12 for chi-square and information gain.  A target above
    the measure's maximum yields a threshold just above 1, pruning everything.
    """
    v = target.value
    if measure == Measure.FSCORE:
        if v > 1:
            return Fraction(1) + Fraction(1, 10 ** 12)
        return Fraction(v) / (2 - Fraction(v))
    if measure == Measure.SUPPORT_DIFF:
        if v > 1:
            return Fraction(1) + Fraction(1, 10 ** 12)
        return Fraction(v)
    lo, hi = 0.0, 1.0
    f = float(v)
    if _ub_at_support(measure, 1.0, target.n_pos_total, target.n_neg_total) < f - FLOAT_TOL:
        return 1.0 + FLOAT_TOL
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if _ub_at_support(measure, mid, target.n_pos_total, target.n_neg_total) >= f:
            hi = mid
        else:
            lo = mid
    return hi


# --------------------------------------------------------------------------
# integer/float kernels used on the mining hot path; they mirror the exact
# definitions above and are cross-checked against them in the tests


def is_rational(measure: Measure) -> bool:
    return measure in RATIONAL_MEASURES


def score_pair(measure: Measure, n_pos: int, n_neg: int,
               n_pos_total: int, n_neg_total: int):
    """(numerator, denominator) usable for exact cross-multiplied comparison."""
    if measure == Measure.FSCORE:
        return 2 * n_pos, n_pos_total + n_pos + n_neg
    if measure == Measure.SUPPORT_DIFF:
        if n_neg_total == 0:
            return n_pos, n_pos_total
        return (n_pos * n_neg_total - n_neg * n_pos_total,
                n_pos_total * n_neg_total)
    raise ValueError(f"{measure} has no exact rational form")


def score_float(measure: Measure, n_pos: int, n_neg: int,
                n_pos_total: int, n_neg_total: int) -> float:
    if measure == Measure.CHI_SQUARE:
        return _chi_square(n_pos, n_neg, n_pos_total, n_neg_total)
    if measure == Measure.INFO_GAIN:
        return _info_gain(n_pos, n_neg, n_pos_total, n_neg_total)
    num, den = score_pair(measure, n_pos, n_neg, n_pos_total, n_neg_total)
    return num / den


def support_threshold(measure: Measure, n_pos: int, n_neg: int,
                      n_pos_total: int, n_neg_total: int) -> float:
    """Float mirror of solve_min_support for the score of these counts.

    For F-score the threshold F/(2-F) collapses to n_pos/(n_pos_total+n_neg):
    identical count statistics therefore always produce bit-identical floats,
    which keeps tie handling consistent on the hot path.
    """
    if measure == Measure.FSCORE:
        return n_pos / (n_pos_total + n_neg)
    if measure == Measure.SUPPORT_DIFF:
        if n_neg_total == 0:
            return n_pos / n_pos_total
        return n_pos / n_pos_total - n_neg / n_neg_total
    sc = score(measure, CountStats(n_pos, n_neg), n_pos_total, n_neg_total)
    return float(solve_min_support(measure, sc))
