"""Adaptive cut points: mid-point generation plus maximal merging of
class-pure regions, computed independently per numeric attribute and per
class of interest."""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional

from .ingest import RawTable, numeric_column_values
from .model import NUMERIC

POS_ONLY = "pos_only"
NEG_ONLY = "neg_only"
MIXED = "mixed"


class Region(NamedTuple):
    """A maximal stretch between adjacent cut points; bounds of None mean +-inf."""

    lo: Optional[Fraction]
    hi: Optional[Fraction]
    purity: str


def initial_cutpoints(values) -> list:
    """Mid-points between neighbouring distinct values (bin representatives)."""
    distinct = sorted(set(values))
    return [(a + b) / 2 for a, b in zip(distinct, distinct[1:])]


def label_regions(values_with_class, class_of_interest) -> list:
    """Initial regions: one distinct value each, labelled by its class mix."""
    by_value = {}
    for v, label in values_with_class:
        flags = by_value.setdefault(v, [False, False])
        flags[0 if label == class_of_interest else 1] = True
    points = sorted(by_value)
    cuts = [(a + b) / 2 for a, b in zip(points, points[1:])]
    regions = []
    for i, v in enumerate(points):
        has_pos, has_neg = by_value[v]
        purity = MIXED if (has_pos and has_neg) else (POS_ONLY if has_pos else NEG_ONLY)
        lo = cuts[i - 1] if i > 0 else None
        hi = cuts[i] if i < len(cuts) else None
        regions.append(Region(lo, hi, purity))
    return regions


def merge_pure_regions(regions) -> list:
    """Surviving cut points after merging runs of same-purity pure regions.

    A boundary is dropped exactly when the regions on both sides are pure and
    of the same kind; mixed regions never merge with anything.  The result is
    maximal by construction: no two adjacent surviving regions share a purity
    other than mixed.
    """
    cuts = []
    for left, right in zip(regions, regions[1:]):
        same_pure = left.purity == right.purity and left.purity != MIXED
        if not same_pure:
            cuts.append(left.hi)
    return cuts


def build_cutpoints(table: RawTable, class_of_interest: str) -> dict:
    """Cut points for every numeric column, keyed by column name."""
    out = {}
    for name, kind in table.schema.columns:
        if kind != NUMERIC:
            continue
        vals = numeric_column_values(table, table.column(name))
        if not vals:
            out[name] = []
            continue
        regions = label_regions(vals, class_of_interest)
        out[name] = merge_pure_regions(regions)
    return out
