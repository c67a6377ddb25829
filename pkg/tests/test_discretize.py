import random
from fractions import Fraction

from hypat.discretize import (MIXED, NEG_ONLY, POS_ONLY, build_cutpoints,
                              initial_cutpoints, label_regions,
                              merge_pure_regions)
from hypat.model import CountStats, count_cover, interval_item
from hypat.relevance import Measure, score


def F(x):
    return Fraction(x).limit_denominator(10 ** 9)


def test_initial_cutpoints_toy6():
    vals = [F(v) for v in (1.0, 2.0, 2.2, 3.0, 4.0, 5.0)]
    assert initial_cutpoints(vals) == [F(1.5), F(2.1), F(2.6), F(3.5), F(4.5)]


def test_initial_cutpoints_single_value():
    assert initial_cutpoints([F(2.0), F(2.0)]) == []


def test_initial_cutpoints_iris_style_midpoint():
    assert initial_cutpoints([F("2.4"), F("2.5")]) == [F("2.45")]


def _regions(pairs):
    return label_regions([(F(v), c) for v, c in pairs], "pos")


def test_label_regions_purity():
    regs = _regions([(1.0, "pos"), (2.0, "pos"), (2.2, "neg"), (3.0, "pos"),
                     (4.0, "neg"), (5.0, "neg")])
    assert [r.purity for r in regs] == [POS_ONLY, POS_ONLY, NEG_ONLY,
                                        POS_ONLY, NEG_ONLY, NEG_ONLY]


def test_merge_pure_regions_toy6():
    regs = _regions([(1.0, "pos"), (2.0, "pos"), (2.2, "neg"), (3.0, "pos"),
                     (4.0, "neg"), (5.0, "neg")])
    assert merge_pure_regions(regs) == [F(2.1), F(2.6), F(3.5)]


def test_merge_all_positive_collapses_everything():
    regs = _regions([(1.0, "pos"), (2.0, "pos"), (3.0, "pos")])
    assert merge_pure_regions(regs) == []


def test_merge_alternating_keeps_all_cuts():
    regs = _regions([(1.0, "pos"), (2.0, "neg"), (3.0, "pos"), (4.0, "neg")])
    assert merge_pure_regions(regs) == [F(1.5), F(2.5), F(3.5)]


def test_value_with_both_classes_is_mixed_and_never_merged():
    regs = _regions([(1.0, "pos"), (2.2, "pos"), (2.2, "neg"), (3.0, "pos")])
    assert [r.purity for r in regs] == [POS_ONLY, MIXED, POS_ONLY]
    assert merge_pure_regions(regs) == [F(1.6), F(2.6)]


def test_build_cutpoints_toy6(toy6_table):
    cuts = build_cutpoints(toy6_table, "pos")
    assert cuts["A"] == [F(2.1), F(2.6), F(3.5)]


def test_build_cutpoints_iris_setosa(iris_table):
    cuts = build_cutpoints(iris_table, "setosa")
    assert Fraction(49, 20) in cuts["petal_len"]     # 2.45
    assert Fraction(4, 5) in cuts["petal_wid"]       # 0.8
    assert Fraction(117, 20) in cuts["sepal_len"]    # 5.85
    assert Fraction(9, 4) in cuts["sepal_wid"]       # 2.25


def test_build_cutpoints_iris_versicolor(iris_table):
    cuts = build_cutpoints(iris_table, "versicolor")
    for v in ("2.45", "4.95", "5.15", "5.05"):
        assert Fraction(v) in cuts["petal_len"]


def _random_values(rng):
    vals = []
    for _ in range(rng.randint(1, 12)):
        vals.append((F(rng.choice([0.5, 1.5, 2.5, 3.5, 4.5])),
                     rng.choice(["pos", "neg"])))
    return vals


def test_merge_maximality_no_adjacent_pure_twins():
    rng = random.Random(42)
    for _ in range(300):
        regs = _regions(_random_values(rng))
        cuts = merge_pure_regions(regs)
        # recompute the purity of each merged region from its constituents
        merged = []
        current = [regs[0].purity]
        for r in regs[1:]:
            if r.lo in cuts:
                merged.append(current)
                current = []
            current.append(r.purity)
        merged.append(current)
        final = ["mixed" if (MIXED in c or {POS_ONLY, NEG_ONLY} <= set(c))
                 else c[0] for c in merged]
        for left, right in zip(final, final[1:]):
            assert not (left == right and left != "mixed")


def test_every_surviving_cut_separates_different_purities():
    rng = random.Random(7)
    for _ in range(200):
        regs = _regions(_random_values(rng))
        cuts = merge_pure_regions(regs)
        for c in cuts:
            left = [r for r in regs if r.hi == c][0]
            right = [r for r in regs if r.lo == c][0]
            assert not (left.purity == right.purity and left.purity != MIXED)


def test_interior_cut_of_merged_region_only_weakens_patterns(toy6_table, toy6):
    """Splitting a merged positive region at an interior point produces a
    pattern that is strictly worse wherever both are defined."""
    ds = toy6
    a = ds.attrs[1]
    n = a.n_bases
    # merged first region spans the two smallest values; 1.5 was its interior
    # cut before merging: compare [min,1.5) against [min,2.1)
    narrow = count_cover((interval_item(1, 0, 1, n),), ds, 0)
    assert narrow == CountStats(2, 0)
    sub = CountStats(1, 0)  # the pattern split at 1.5 would cover one positive
    f_narrow = score(Measure.FSCORE, narrow, 3, 3)
    f_sub = score(Measure.FSCORE, sub, 3, 3)
    assert f_sub.value < f_narrow.value
