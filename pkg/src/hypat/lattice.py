"""Per-attribute concept structure over intervals: triangular support counts
computed by dynamic programming over base-interval counts, support/closedness
screening of wider intervals, and dynamic merging of class-pure neighbouring
bases inside a conditional context."""

from __future__ import annotations

from bisect import bisect_left
from typing import NamedTuple, Optional

import numpy as np

from .model import Item


class EligibleCell(NamedTuple):
    i: int          # first run index
    j: int          # one past the last run index
    item: Item      # emitted interval item, in original cut indices
    pos: int
    neg: int


class ConceptLattice:
    """Interval supports for one numeric attribute in one conditional context.

    Bases are the distinct base-interval items present in the conditional
    transactions, in ascending order; absent bases of the attribute's grid
    simply carry zero counts.  Runs group consecutive bases (1:1 before any
    merge).  After ``dp_supports`` the support of the interval spanning runs
    ``i..j-1`` is ``cpos[j] - cpos[i]`` (same for negatives): each wider
    interval's count is the sum of a base count and the count one level
    below, applied level by level.
    """

    def __init__(self, attr: int, n_total: int, base_items, base_pos, base_neg):
        self.attr = attr
        self.n_total = n_total
        self.base_items = list(base_items)
        self.base_pos = np.asarray(base_pos, dtype=np.int64)
        self.base_neg = np.asarray(base_neg, dtype=np.int64)
        # runs as (start, end) slices into base_items; identity before merging
        self.runs = [(k, k + 1) for k in range(len(self.base_items))]
        self.run_pos = self.base_pos.copy()
        self.run_neg = self.base_neg.copy()
        self.cpos: Optional[np.ndarray] = None
        self.cneg: Optional[np.ndarray] = None
        self._eligible: Optional[list] = None

    # -- run helpers ------------------------------------------------------

    @property
    def n_runs(self) -> int:
        return len(self.runs)

    def emit_bounds(self, i: int, j: int):
        """Original-index bounds of the emitted item for cell (i, j):
        the span trimmed at both ends to bases that carry positives, the most
        specific interval with this cell's positive cover."""
        lo_b, hi_b = self.runs[i][0], self.runs[j - 1][1]
        ks = [k for k in range(lo_b, hi_b) if self.base_pos[k] > 0]
        if not ks:
            return None
        return self.base_items[ks[0]].lo, self.base_items[ks[-1]].hi

    def run_trims(self):
        """Per run, the emission bounds contributed by its own bases: lo of
        its first positive-carrying base and hi of its last one (-1 when the
        run carries no positive)."""
        m = self.n_runs
        lo = np.full(m, -1, dtype=np.int64)
        hi = np.full(m, -1, dtype=np.int64)
        for r, (a, b) in enumerate(self.runs):
            ks = [k for k in range(a, b) if self.base_pos[k] > 0]
            if ks:
                lo[r] = self.base_items[ks[0]].lo
                hi[r] = self.base_items[ks[-1]].hi
        return lo, hi

    # -- spec surface ------------------------------------------------------

    def grid_rows(self):
        """Base counts over the attribute's full cut grid (zeros filled)."""
        pos = np.zeros(self.n_total, dtype=np.int64)
        neg = np.zeros(self.n_total, dtype=np.int64)
        for it, p, n in zip(self.base_items, self.base_pos, self.base_neg):
            pos[it.lo] = p
            neg[it.lo] = n
        return pos, neg

    def interval_counts(self, lo: int, hi: int):
        """(pos, neg) support of the arbitrary interval [lo, hi) in original
        cut indices; agrees with a full scan of the conditional transactions."""
        los = [it.lo for it in self.base_items]
        a = bisect_left(los, lo)
        b = bisect_left(los, hi)
        return int(self.base_pos[a:b].sum()), int(self.base_neg[a:b].sum())

    def members_for_item(self, item: Item):
        """Present bases lying inside an emitted interval item."""
        los = [it.lo for it in self.base_items]
        a = bisect_left(los, item.lo)
        b = bisect_left(los, item.hi)
        return self.base_items[a:b]


def build_lattice(conditional_counts, attr: int, n_total: int) -> ConceptLattice:
    """Base layer of the lattice from per-base weighted occurrence counts.

    ``conditional_counts`` maps each present base-interval item to its
    (positive, negative) weight in the conditional transactions.
    """
    items = sorted(conditional_counts, key=lambda it: it.lo)
    pos = [conditional_counts[it][0] for it in items]
    neg = [conditional_counts[it][1] for it in items]
    return ConceptLattice(attr, n_total, items, pos, neg)


def dynamic_merge(lat: ConceptLattice) -> ConceptLattice:
    """Collapse maximal stretches of consecutive bases that are pure inside
    this context (no negatives across the stretch, or no positives across
    it) into single runs.  Mixed bases never merge.  Emitted items are
    unaffected because emission bounds are trimmed back to positive-carrying
    bases either way."""
    runs = []
    sums = []
    for k in range(len(lat.base_items)):
        p, n = int(lat.base_pos[k]), int(lat.base_neg[k])
        if runs:
            sp, sn = sums[-1]
            if (sn + n == 0) or (sp + p == 0):
                runs[-1] = (runs[-1][0], k + 1)
                sums[-1] = (sp + p, sn + n)
                continue
        runs.append((k, k + 1))
        sums.append((p, n))
    merged = ConceptLattice(lat.attr, lat.n_total, lat.base_items,
                            lat.base_pos, lat.base_neg)
    merged.runs = runs
    merged.run_pos = np.array([s[0] for s in sums], dtype=np.int64)
    merged.run_neg = np.array([s[1] for s in sums], dtype=np.int64)
    return merged


def dp_supports(lat: ConceptLattice) -> ConceptLattice:
    """Fill the triangular support structure over the current runs."""
    lat.cpos = np.concatenate(([0], np.cumsum(lat.run_pos)))
    lat.cneg = np.concatenate(([0], np.cumsum(lat.run_neg)))
    return lat


def screen(lat: ConceptLattice, min_pos_count: float) -> list:
    """Eligible cells: enough positive support, not the full range, and for
    wider intervals a strictly larger positive count than both immediate
    specializations (dropping a boundary run that carries no positive would
    leave the positive cover unchanged, so such a cell is redundant).

    Wider cells are screened before narrower ones; every cell inside a cell
    that already failed the support test fails it too and is skipped
    wholesale by the vectorized test.
    """
    if lat.cpos is None:
        raise ValueError("dp_supports must run before screening")
    m = lat.n_runs
    cells = []
    if m == 0:
        lat._eligible = cells
        return cells
    cpos = lat.cpos
    # support-eligible cells (i, j): cpos[j] - cpos[i] >= min_pos_count.
    # cpos is nondecreasing, so for each i the admissible j form a suffix;
    # everything below the first admissible j is skipped wholesale, which is
    # the wide-to-narrow traversal cut.
    j_start = np.searchsorted(cpos, cpos[:m] + min_pos_count, side="left")
    j_start = np.maximum(j_start, np.arange(1, m + 1))
    cnt = (m + 1) - j_start
    cnt = np.where(cnt > 0, cnt, 0)
    total = int(cnt.sum())
    if total == 0:
        lat._eligible = cells
        return cells
    ii = np.repeat(np.arange(m), cnt)
    starts = np.concatenate(([0], np.cumsum(cnt)))[:-1]
    jj = np.arange(total) - np.repeat(starts, cnt) + np.repeat(j_start, cnt)

    # closedness: a wider interval whose boundary run carries no positive has
    # the same positive cover as the immediate specialization dropping that
    # run, and is redundant.
    pos_ok = lat.run_pos > 0
    keep = pos_ok[ii] & pos_ok[jj - 1]
    # the unrestricted full range never becomes an item
    trim_lo, trim_hi = lat.run_trims()
    keep &= ~((trim_lo[ii] == 0) & (trim_hi[jj - 1] == lat.n_total))
    ii, jj = ii[keep], jj[keep]
    order = np.argsort(ii - jj, kind="stable")  # widest first
    ii, jj = ii[order], jj[order]
    pos_v = (cpos[jj] - cpos[ii]).tolist()
    neg_v = (lat.cneg[jj] - lat.cneg[ii]).tolist()
    lo_v = trim_lo[ii].tolist()
    hi_v = trim_hi[jj - 1].tolist()
    attr = lat.attr
    for k, (i, j) in enumerate(zip(ii.tolist(), jj.tolist())):
        cells.append(EligibleCell(i, j, Item(attr, lo_v[k], hi_v[k]),
                                  pos_v[k], neg_v[k]))
    cells.extend(_near_full_cells(lat, min_pos_count, trim_lo, trim_hi))
    lat._eligible = cells
    return cells


def _near_full_cells(lat: ConceptLattice, min_pos_count, trim_lo, trim_hi):
    """Intervals anchored at one end of the grid when the forbidden full
    range blocks widening.

    An interval cutting into a boundary run is normally redundant: widening
    it across the whole run gains positives at no negatives.  When that
    widening would be the full range, the widened form does not exist, so
    the one-side-anchored sub-intervals of the two boundary runs survive in
    their own right and are emitted at base granularity.
    """
    m = lat.n_runs
    if m == 0 or trim_lo[0] != 0 or trim_hi[m - 1] != lat.n_total:
        return []
    out = []
    first_lo, first_hi = lat.runs[0]
    last_lo, last_hi = lat.runs[m - 1]
    first_pos = [k for k in range(first_lo, first_hi) if lat.base_pos[k] > 0]
    last_pos = [k for k in range(last_lo, last_hi) if lat.base_pos[k] > 0]
    seen = set()
    for k in last_pos[:-1]:                      # [0, b): drop a tail of the last run
        hi = lat.base_items[k].hi
        pos, neg = lat.interval_counts(0, hi)
        if pos >= min_pos_count and (0, hi) not in seen:
            seen.add((0, hi))
            out.append(EligibleCell(0, m, Item(lat.attr, 0, hi), pos, neg))
    for k in first_pos[1:]:                      # [a, n): drop a head of the first run
        lo = lat.base_items[k].lo
        pos, neg = lat.interval_counts(lo, lat.n_total)
        if pos >= min_pos_count and (lo, lat.n_total) not in seen:
            seen.add((lo, lat.n_total))
            out.append(EligibleCell(0, m, Item(lat.attr, lo, lat.n_total),
                                    pos, neg))
    return out
