"""Prefix tree over conditional transactions with positive/negative weights,
a header table covering symbolic, base-interval and upper-interval items,
and projection back to weighted conditional transaction sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .model import Item, NUMERIC, SYMBOLIC

_EMPTY_TIDS = np.empty(0, dtype=np.int64)


def cond_txn(items, tids=None, neg=0):
    """A weighted conditional transaction: sorted items, covered positive
    transaction ids, and a negative multiplicity."""
    t = _EMPTY_TIDS if tids is None or len(tids) == 0 else np.asarray(tids, dtype=np.int64)
    return (tuple(items), t, neg)


class FPNode:
    __slots__ = ("item", "parent", "children", "pos", "neg",
                 "tid_chunks", "ends", "_tids", "_prefix")

    def __init__(self, item: Optional[Item], parent: Optional["FPNode"]):
        self.item = item
        self.parent = parent
        self.children = {}
        self.pos = 0
        self.neg = 0
        self.tid_chunks = []
        self.ends = []          # (tids, neg) of transactions terminating here
        self._tids = None
        self._prefix = None

    def tids(self) -> np.ndarray:
        """All covered positive transaction ids below this prefix."""
        if self._tids is None:
            if not self.tid_chunks:
                self._tids = _EMPTY_TIDS
            elif len(self.tid_chunks) == 1:
                self._tids = self.tid_chunks[0]
            else:
                self._tids = np.concatenate(self.tid_chunks)
        return self._tids

    def path_items(self) -> list:
        """Items on the path from the root down to this node."""
        out = []
        node = self
        while node.item is not None:
            out.append(node.item)
            node = node.parent
        out.reverse()
        return out

    def prefix(self) -> tuple:
        """Items strictly above this node (its conditional transaction);
        attributes on a path are distinct, so this never contains the node's
        own attribute."""
        if self._prefix is None:
            if self.parent is None or self.parent.item is None:
                self._prefix = ()
            else:
                self._prefix = self.parent.prefix() + (self.parent.item,)
        return self._prefix


@dataclass
class HeaderEntry:
    nodes: list = field(default_factory=list)
    pos: int = 0
    neg: int = 0


class FPTree:
    """Prefix tree plus header table for symbolic and base-interval items."""

    def __init__(self):
        self.root = FPNode(None, None)
        self.header = {}

    def insert(self, items, tids, neg) -> None:
        node = self.root
        w = len(tids)
        for it in items:
            child = node.children.get(it)
            if child is None:
                child = FPNode(it, node)
                node.children[it] = child
                self.header.setdefault(it, HeaderEntry()).nodes.append(child)
            entry = self.header[it]
            entry.pos += w
            entry.neg += neg
            child.pos += w
            child.neg += neg
            if w:
                child.tid_chunks.append(tids)
            node = child
        node.ends.append((tids, neg))


def build_tree(transactions, sort_key: Optional[Callable] = None) -> FPTree:
    """Insert weighted conditional transactions as shared prefix paths.

    Items inside each transaction must already follow one global order in
    which all items of one attribute are consecutive; pass ``sort_key`` to
    have the tree sort them here instead.
    """
    tree = FPTree()
    for items, tids, neg in transactions:
        if sort_key is not None:
            items = sorted(items, key=sort_key)
        tree.insert(items, tids, neg)
    return tree


def aggregate(transactions):
    """Merge conditional transactions carrying identical item tuples."""
    return prepare(transactions)[0]


def prepare(transactions):
    """One pass over a conditional set: aggregated transactions, per-item
    weights, and the context totals."""
    agg = {}
    for items, tids, neg in transactions:
        e = agg.get(items)
        if e is None:
            agg[items] = [[tids] if len(tids) else [], neg]
        else:
            if len(tids):
                e[0].append(tids)
            e[1] += neg
    out = []
    counts = {}
    tot_pos = tot_neg = 0
    for items, (chunks, neg) in agg.items():
        if not chunks:
            t = _EMPTY_TIDS
        elif len(chunks) == 1:
            t = chunks[0]
        else:
            t = np.concatenate(chunks)
        out.append((items, t, neg))
        w = len(t)
        tot_pos += w
        tot_neg += neg
        for it in items:
            c = counts.get(it)
            if c is None:
                counts[it] = [w, neg]
            else:
                c[0] += w
                c[1] += neg
    return out, counts, tot_pos, tot_neg


def count_items(transactions):
    """Positive/negative weight of every item over a conditional set."""
    counts = {}
    for items, tids, neg in transactions:
        w = len(tids)
        for it in items:
            c = counts.get(it)
            if c is None:
                counts[it] = [w, neg]
            else:
                c[0] += w
                c[1] += neg
    return counts


def prune_items(transactions, counts, min_pos_count, attr_kinds):
    """Drop items that can no longer reach the support threshold.

    Symbolic items are removed as soon as their own positive weight falls
    below the threshold.  Base-interval items are removed only when the whole
    attribute's summed base positive weight falls below it; otherwise weak
    bases stay inside transactions (they still feed wider-interval counts)
    even though they are no longer branch candidates themselves.
    """
    attr_pos = {}
    for it, (p, _) in counts.items():
        if attr_kinds[it.attr] == NUMERIC:
            attr_pos[it.attr] = attr_pos.get(it.attr, 0) + p
    dead = set()
    for it, (p, _) in counts.items():
        if attr_kinds[it.attr] == SYMBOLIC:
            if p < min_pos_count:
                dead.add(it)
        elif attr_pos[it.attr] < min_pos_count:
            dead.add(it)
    if not dead:
        return transactions
    out = []
    for items, tids, neg in transactions:
        kept = tuple(it for it in items if it not in dead)
        if kept:
            out.append((kept, tids, neg))
    return out


def project(tree: FPTree, item: Item, nodes=None):
    """Conditional transaction set for extending the context pattern by
    ``item``: every covered transaction reduced to its items on *other*
    attributes.  ``nodes`` overrides the header list (used for upper-interval
    items, whose transactions sit at the nodes of the bases they span)."""
    if nodes is None:
        entry = tree.header.get(item)
        if entry is None:
            raise KeyError(f"item {item} has no header entry")
        nodes = entry.nodes
    attr = item.attr
    out = []
    for w in nodes:
        prefix = [it for it in w.path_items() if it.attr != attr]
        stack = [(w, ())]
        while stack:
            node, suffix = stack.pop()
            for tids, neg in node.ends:
                out.append((tuple(prefix) + suffix, tids, neg))
            for child in node.children.values():
                child_suffix = suffix
                if child.item.attr != attr:
                    child_suffix = suffix + (child.item,)
                stack.append((child, child_suffix))
    return out


def project_prefix(nodes, attr: int):
    """Prefix-only projection used by the depth-first search: for each node,
    the items above it in the tree (always attributes ordered before ``attr``)
    with the node's weights.  Nodes sharing a tree parent share that prefix
    and are emitted as one aggregated conditional transaction; transactions
    whose prefix is empty carry no extension items and are dropped."""
    groups = {}
    for w in nodes:
        e = groups.get(id(w.parent))
        if e is None:
            groups[id(w.parent)] = e = [w.parent, [], 0]
        if w.tid_chunks:
            e[1].extend(w.tid_chunks)
        e[2] += w.neg
    out = []
    for p, chunks, neg in groups.values():
        if p.item is None:
            continue
        if not chunks:
            tids = _EMPTY_TIDS
        elif len(chunks) == 1:
            tids = chunks[0]
        else:
            tids = np.concatenate(chunks)
        out.append((p.prefix() + (p.item,), tids, neg))
    return out


def register_upper_links(tree: FPTree, lattice, cells) -> dict:
    """Header entries for screened upper-interval items.

    Every node holding a base interval strictly inside an eligible cell joins
    that cell's node list; counts come from the lattice.
    """
    out = {}
    for cell in cells:
        if cell.item in tree.header:
            continue  # plain base item, already in the main header
        nodes = []
        for base in lattice.members_for_item(cell.item):
            entry = tree.header.get(base)
            if entry is not None:
                nodes.extend(entry.nodes)
        out[cell.item] = HeaderEntry(nodes=nodes, pos=cell.pos, neg=cell.neg)
    return out
