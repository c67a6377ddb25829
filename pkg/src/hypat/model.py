"""Core data model: items, transactions, patterns, subsumption and coverage.

Items are either symbolic equalities (``attr = value``) or half-open
interval restrictions (``v_lo <= attr < v_hi``) on a numeric attribute.
Interval endpoints are stored as *cut-point indices*, never as raw bounds,
so all comparisons on the hot path are exact integer comparisons.  Index 0
and index ``n`` (the number of base intervals) act as the -inf / +inf
sentinels.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

SYMBOLIC = "symbolic"
NUMERIC = "numeric"

#: sentinel stored in Item.hi marking a symbolic (equality) item
SYMBOL = -1


class Item(NamedTuple):
    """One atomic condition on a single attribute.

    For a symbolic item, ``lo`` holds the symbol id and ``hi`` is SYMBOL.
    For an interval item, ``lo`` and ``hi`` are cut-point indices with
    ``0 <= lo < hi <= n``; a base interval has ``hi == lo + 1``.
    """

    attr: int
    lo: int
    hi: int

    @property
    def is_symbolic(self) -> bool:
        return self.hi == SYMBOL


def sym_item(attr: int, symbol_id: int) -> Item:
    return Item(attr, symbol_id, SYMBOL)


def interval_item(attr: int, lo: int, hi: int, n_bases: int) -> Item:
    """Interval item over cut indices; the all-covering [0, n) is rejected."""
    if not (0 <= lo < hi <= n_bases):
        raise ValueError(f"bad interval indices ({lo}, {hi}) for n={n_bases}")
    if lo == 0 and hi == n_bases:
        raise ValueError("full-range interval items are not allowed")
    return Item(attr, lo, hi)


class Transaction(NamedTuple):
    """One row in transactional form.

    ``values[a]`` is the symbol id (symbolic attribute) or the base-interval
    index (numeric attribute) or None when the cell is missing.  An absent
    slot is covered by no item of that attribute.
    """

    values: tuple
    cls: int


class CountStats(NamedTuple):
    """Exact coverage counts of a pattern: positives and negatives covered."""

    n_pos: int
    n_neg: int


@dataclass(frozen=True)
class Attribute:
    """Schema entry for one column of the transactional dataset."""

    index: int
    name: str
    kind: str  # SYMBOLIC or NUMERIC
    symbols: tuple = ()          # symbolic: id -> original string
    cuts: tuple = ()             # numeric: interior cut points (Fractions), ascending

    @property
    def n_bases(self) -> int:
        return len(self.cuts) + 1


@dataclass
class Dataset:
    """Transactions over a fixed attribute schema, with class labels."""

    attrs: list
    transactions: list
    classes: list  # class-id -> name

    def class_id(self, name: str) -> int:
        try:
            return self.classes.index(name)
        except ValueError:
            raise KeyError(f"unknown class {name!r}") from None

    def class_count(self, cls: int) -> int:
        return sum(1 for t in self.transactions if t.cls == cls)


# --------------------------------------------------------------------------
# subsumption and coverage


def subsumes_item(x: Item, y: Item) -> bool:
    """True iff x is at least as general as y (same attribute)."""
    if x.attr != y.attr:
        return False
    if x.hi == SYMBOL or y.hi == SYMBOL:
        return x == y
    return x.lo <= y.lo and y.hi <= x.hi


def strictly_subsumes_item(x: Item, y: Item) -> bool:
    return x != y and subsumes_item(x, y)


def subsumes_pattern(x: Sequence[Item], y: Sequence[Item]) -> bool:
    """True iff every item of x subsumes some item of y."""
    return all(any(subsumes_item(xi, yi) for yi in y) for xi in x)


def strictly_subsumes_pattern(x: Sequence[Item], y: Sequence[Item]) -> bool:
    return tuple(x) != tuple(y) and subsumes_pattern(x, y)


def make_pattern(items: Iterable[Item]) -> tuple:
    """Canonical pattern: items sorted by attribute, attributes distinct."""
    out = tuple(sorted(items))
    attrs = [it.attr for it in out]
    if len(set(attrs)) != len(attrs):
        raise ValueError("pattern items must have distinct attributes")
    return out


def transaction_items(t: Transaction, attrs: Sequence[Attribute]) -> tuple:
    """The transaction viewed as a pattern of its (base/symbolic) items."""
    items = []
    for a in attrs:
        v = t.values[a.index]
        if v is None:
            continue
        if a.kind == SYMBOLIC:
            items.append(sym_item(a.index, v))
        else:
            items.append(Item(a.index, v, v + 1))
    return tuple(items)


def covers(x: Sequence[Item], t: Transaction) -> bool:
    """True iff pattern x covers transaction t (x subsumes t's items)."""
    for it in x:
        v = t.values[it.attr]
        if v is None:
            return False
        if it.hi == SYMBOL:
            if v != it.lo:
                return False
        elif not (it.lo <= v < it.hi):
            return False
    return True


def count_cover(x: Sequence[Item], dataset: Dataset, cls: int) -> CountStats:
    """Reference coverage counter: full scan of the dataset.

    Tree-based counting elsewhere must agree with this exactly.
    """
    n_pos = n_neg = 0
    for t in dataset.transactions:
        if covers(x, t):
            if t.cls == cls:
                n_pos += 1
            else:
                n_neg += 1
    return CountStats(n_pos, n_neg)


def cover_sets(x: Sequence[Item], dataset: Dataset, cls: int):
    """Indices of covered positive and negative transactions."""
    pos, neg = [], []
    for i, t in enumerate(dataset.transactions):
        if covers(x, t):
            (pos if t.cls == cls else neg).append(i)
    return pos, neg
