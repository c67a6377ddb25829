"""Brute-force reference miner for small instances.

Enumerates the complete pattern space (every combination of one optional
item per attribute), evaluates each pattern by full scan, and applies the
covering and redundancy rules directly from their definitions.  It shares
no search machinery with the tree-based miner and is the ground truth the
miner is tested against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional

from .model import (CountStats, Dataset, Item, SYMBOLIC,
                    strictly_subsumes_pattern, sym_item)
from .relevance import Measure, compare, score
from .miner import MinedResult


@dataclass
class OracleLimits:
    max_patterns: int = 10 ** 7


def _attribute_choices(dataset: Dataset):
    """Per attribute: None plus every admissible item (full range excluded)."""
    choices = []
    for a in dataset.attrs:
        items = [None]
        if a.kind == SYMBOLIC:
            items.extend(sym_item(a.index, s) for s in range(len(a.symbols)))
        else:
            n = a.n_bases
            items.extend(Item(a.index, lo, hi)
                         for lo in range(n) for hi in range(lo + 1, n + 1)
                         if not (lo == 0 and hi == n))
        choices.append(items)
    return choices


def enumerate_patterns(dataset: Dataset, limits: Optional[OracleLimits] = None):
    """Every non-empty pattern over the dataset's item space."""
    limits = limits or OracleLimits()
    choices = _attribute_choices(dataset)
    size = 1
    for c in choices:
        size *= len(c)
    if size - 1 > limits.max_patterns:
        raise ValueError(f"pattern space {size - 1} exceeds cap {limits.max_patterns}")
    for combo in product(*choices):
        items = tuple(it for it in combo if it is not None)
        if items:
            yield items


def _item_mask(item: Item, dataset: Dataset) -> int:
    mask = 0
    for i, t in enumerate(dataset.transactions):
        v = t.values[item.attr]
        if v is None:
            continue
        if item.is_symbolic:
            if v == item.lo:
                mask |= 1 << i
        elif item.lo <= v < item.hi:
            mask |= 1 << i
    return mask


def oracle_mine(dataset: Dataset, target_class: str,
                measure: Measure = Measure.FSCORE,
                limits: Optional[OracleLimits] = None):
    """Reference mining by definition: per-positive top-1 tie sets over the
    full enumeration, then most-specific-per-positive-cover (checked against
    the entire enumerated space), then the top-of-some-list requirement."""
    cls = dataset.class_id(target_class)
    n = len(dataset.transactions)
    pos_rows = [i for i, t in enumerate(dataset.transactions) if t.cls == cls]
    np_total = len(pos_rows)
    nn_total = n - np_total
    if np_total == 0:
        raise ValueError(f"class {target_class!r} has no transactions")
    pos_all = 0
    for i in pos_rows:
        pos_all |= 1 << i
    all_mask = (1 << n) - 1

    item_masks = {}
    evaluated = []  # (items, pos_mask, n_pos, n_neg)
    by_pos_cover = {}
    for items in enumerate_patterns(dataset, limits):
        mask = all_mask
        for it in items:
            m = item_masks.get(it)
            if m is None:
                m = item_masks[it] = _item_mask(it, dataset)
            mask &= m
        pm = mask & pos_all
        entry = (items, pm, bin(pm).count("1"), bin(mask & ~pos_all & all_mask).count("1"))
        evaluated.append(entry)
        by_pos_cover.setdefault(pm, []).append(items)

    # per-positive top-1 tie sets among characterizing patterns
    best = {row: None for row in pos_rows}
    lists = {row: [] for row in pos_rows}
    scored = {}
    for items, pm, n_pos, n_neg in evaluated:
        if n_pos == 0 or n_pos * nn_total < n_neg * np_total:
            continue
        sc = score(measure, CountStats(n_pos, n_neg), np_total, nn_total)
        scored[items] = (sc, pm, n_pos, n_neg)
        for row in pos_rows:
            if not (pm >> row) & 1:
                continue
            if best[row] is None or compare(sc, best[row]) > 0:
                best[row] = sc
                lists[row] = [items]
            elif compare(sc, best[row]) == 0:
                lists[row].append(items)

    candidates = {}
    for row in pos_rows:
        for items in lists[row]:
            candidates[items] = scored[items]

    # most specific per positive cover, judged against the full enumeration
    closed = {}
    for items, (sc, pm, n_pos, n_neg) in candidates.items():
        if any(other != items and strictly_subsumes_pattern(items, other)
               for other in by_pos_cover[pm]):
            continue
        closed[items] = (sc, pm, n_pos, n_neg)

    # survivors must still top some positive transaction's list
    best2 = {row: None for row in pos_rows}
    for items, (sc, pm, _, _) in closed.items():
        for row in pos_rows:
            if (pm >> row) & 1 and (best2[row] is None or compare(sc, best2[row]) > 0):
                best2[row] = sc
    kept = []
    for items, (sc, pm, n_pos, n_neg) in closed.items():
        if any((pm >> row) & 1 and compare(sc, best2[row]) == 0 for row in pos_rows):
            kept.append((items, sc, pm, n_pos, n_neg))

    results = []
    for items, sc, pm, n_pos, n_neg in kept:
        conf = Fraction(n_pos, n_pos + n_neg) if n_pos + n_neg else Fraction(0)
        cover = tuple(row for row in pos_rows if (pm >> row) & 1)
        results.append(MinedResult(items, CountStats(n_pos, n_neg), sc, conf,
                                   Fraction(n_pos, np_total), cover))
    results.sort(key=lambda r: (-r.score.value, r.pattern))
    return results
