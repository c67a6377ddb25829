"""Depth-first search that runs a top-1 contest per positive transaction
simultaneously, with support-threshold pruning, dynamic branch re-ordering,
and post-hoc redundancy filtering.

Pruning discipline: a single global threshold only ever rises to the weakest
of all per-transaction thresholds, so a pattern below it can beat no list
anywhere; on top of that, each subtree carries a scoped threshold derived
from the transactions its root pattern covers, which is sound inside that
subtree because descendants can only cover fewer transactions.  Thresholds
are floats compared with a small slack so that borderline candidates are
always kept; scores themselves are compared exactly.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from . import fptree, lattice as lattice_mod, relevance
from .model import (CountStats, Dataset, Item, NUMERIC, SYMBOL, SYMBOLIC,
                    make_pattern, strictly_subsumes_pattern, transaction_items)
from .relevance import Measure, Score

#: slack subtracted from float thresholds before pruning; keeps candidates
#: sitting exactly on a threshold alive, so pruning never changes the output
SLACK = 1e-9

FLOAT_TOL = relevance.FLOAT_TOL


@dataclass
class MinerConfig:
    measure: Measure = Measure.FSCORE
    dynamic_merge: bool = True
    reorder: bool = True
    bnb: bool = True
    threads: int = 1
    time_limit: Optional[float] = None
    trace_sigma: bool = False


@dataclass
class RunStats:
    visited: int = 0
    seconds: float = 0.0
    sigma_final: float = 0.0
    truncated: bool = False
    sigma_trace: Optional[list] = None


class MinedPattern(NamedTuple):
    """A recorded candidate: canonical items, exact counts, comparison key,
    support threshold of its score, and the covered positive ids."""

    items: tuple
    n_pos: int
    n_neg: int
    key: tuple        # (num, den) ints for rational measures, (float,) else
    thr: float        # least positive support whose upper bound ties this score
    cover: np.ndarray  # sorted covered positive transaction indices


class MinedResult(NamedTuple):
    pattern: tuple
    stats: CountStats
    score: Score
    confidence: Fraction
    positive_support: Fraction
    cover: tuple


class _Timeout(Exception):
    pass


class CandidateState:
    """Per-positive-transaction candidate lists plus the pruning threshold."""

    def __init__(self, n_pos_total: int, n_neg_total: int, measure: Measure,
                 trace: bool = False):
        self.n_pos_total = n_pos_total
        self.n_neg_total = n_neg_total
        self.measure = measure
        self.rational = relevance.is_rational(measure)
        p = n_pos_total
        self.lists = [[] for _ in range(p)]
        if self.rational:
            self.best_num = np.full(p, -1, dtype=np.int64)
            self.best_den = np.ones(p, dtype=np.int64)
        else:
            self.best_f = np.full(p, -np.inf)
        self.sigma0 = 1.0 / p
        # per-transaction threshold: support needed to tie the current best;
        # an empty list exceptionally counts as 1/|positives|
        self.u = np.full(p, self.sigma0)
        # reject threshold: -inf while the list is empty (anything may enter)
        self.rej = np.full(p, -np.inf)
        self._sigma = self.sigma0
        self._dirty = False
        self.visited = 0
        self.lock = threading.Lock()
        self.trace = [] if trace else None

    def sigma(self) -> float:
        """Global monotone threshold: the weakest per-transaction threshold."""
        if self._dirty:
            with self.lock:
                v = float(self.u.min())
                if v > self._sigma:
                    self._sigma = v
                    if self.trace is not None:
                        self.trace.append((self.visited, v))
                self._dirty = False
        return self._sigma

    def record(self, rec: MinedPattern, cover: np.ndarray) -> None:
        """Win/tie/lose contest of rec against each covered list.

        A strictly better score empties the list first; an exactly tied score
        is appended; a worse one is dropped.
        """
        with self.lock:
            if self.rational:
                num, den = rec.key
                ln = num * self.best_den[cover]
                rn = den * self.best_num[cover]
                win = ln > rn
                tie = ln == rn
            else:
                diff = rec.key[0] - self.best_f[cover]
                win = diff > FLOAT_TOL
                tie = np.abs(diff) <= FLOAT_TOL
            wt = cover[win]
            if wt.size:
                if self.rational:
                    self.best_num[wt] = rec.key[0]
                    self.best_den[wt] = rec.key[1]
                else:
                    self.best_f[wt] = rec.key[0]
                self.u[wt] = rec.thr
                self.rej[wt] = rec.thr
                lists = self.lists
                for t in wt.tolist():
                    lists[t] = [rec]
                self._dirty = True
            tt = cover[tie]
            if tt.size:
                lists = self.lists
                for t in tt.tolist():
                    lists[t].append(rec)


def raise_threshold(state: CandidateState, covered: np.ndarray):
    """(global_sigma, scoped_bound) after the raises triggered by a visit.

    The scoped bound is the weakest threshold among the positives the visited
    pattern covers; it is sound for that pattern's whole subtree.  The global
    cell only rises to the weakest threshold over *all* positives, which is
    sound everywhere.
    """
    u_star = float(state.u[covered].min()) if covered.size else state.sigma0
    return state.sigma(), u_star


def order_branches(extensions, measure: Measure, n_pos_total: int,
                   n_neg_total: int, reorder: bool = True, rank=None):
    """Branch order: by relevance of the one-item extension, best first,
    regardless of item type; ties and the no-reorder mode fall back to the
    fixed insertion order (attribute, then bounds/symbol)."""
    def fixed_key(ext):
        item = ext[0]
        if rank is not None:
            return rank(item)
        return (item.attr, item.lo, item.hi)

    if not reorder:
        return sorted(extensions, key=fixed_key)
    scored = []
    for ext in extensions:
        item, pos, neg = ext[0], ext[1], ext[2]
        f = relevance.score_float(measure, pos, neg, n_pos_total, n_neg_total)
        scored.append((-f, item.attr, item.lo, item.hi, ext))
    scored.sort(key=lambda s: s[:4])
    return [s[4] for s in scored]


class _Search:
    def __init__(self, dataset: Dataset, cls: int, cfg: MinerConfig):
        self.ds = dataset
        self.cls = cls
        self.cfg = cfg
        self.attrs = dataset.attrs
        self.kinds = [a.kind for a in self.attrs]
        self.n_total = {a.index: a.n_bases for a in self.attrs if a.kind == NUMERIC}
        pos_rows = [i for i, t in enumerate(dataset.transactions) if t.cls == cls]
        self.pos_row_of = pos_rows                       # positive id -> dataset row
        self.np_total = len(pos_rows)
        self.nn_total = len(dataset.transactions) - self.np_total
        self.state = CandidateState(self.np_total, self.nn_total, cfg.measure,
                                    trace=cfg.trace_sigma)
        self.deadline = (time.monotonic() + cfg.time_limit
                         if cfg.time_limit is not None else None)
        self.truncated = False
        self._parallel = cfg.threads > 1
        self._rank = self._build_rank()

    # -- global insertion order -------------------------------------------

    def _build_rank(self):
        """Attribute blocks: symbolic attributes by falling positive weight,
        then numeric attributes in schema order; items of one attribute are
        always consecutive.  Within a symbolic block, frequent values first."""
        sym_attr_pos = {a.index: 0 for a in self.attrs if a.kind == SYMBOLIC}
        sym_item_pos = {}
        for t in self.ds.transactions:
            if t.cls != self.cls:
                continue
            for a in self.attrs:
                v = t.values[a.index]
                if v is None or a.kind != SYMBOLIC:
                    continue
                sym_attr_pos[a.index] += 1
                key = (a.index, v)
                sym_item_pos[key] = sym_item_pos.get(key, 0) + 1
        sym_order = sorted(sym_attr_pos, key=lambda a: (-sym_attr_pos[a], a))
        block = {a: i for i, a in enumerate(sym_order)}
        nb = len(block)
        for a in self.attrs:
            if a.kind == NUMERIC:
                block[a.index] = nb
                nb += 1
        item_pos = sym_item_pos

        def rank(item: Item):
            if item.hi == SYMBOL:
                return (block[item.attr], -item_pos.get((item.attr, item.lo), 0),
                        item.lo)
            return (block[item.attr], item.lo, item.hi)

        return rank

    # -- context pipeline ---------------------------------------------------

    def _threshold(self, covered: np.ndarray, scope: float) -> float:
        if not self.cfg.bnb:
            return self.state.sigma0
        sigma, u_star = raise_threshold(self.state, covered)
        return max(sigma, u_star, scope)

    def run(self):
        ds, cls = self.ds, self.cls
        txns = []
        pidx = 0
        for t in ds.transactions:
            items = sorted(transaction_items(t, self.attrs), key=self._rank)
            if t.cls == cls:
                txns.append(fptree.cond_txn(items, np.array([pidx], dtype=np.int64), 0))
                pidx += 1
            else:
                txns.append(fptree.cond_txn(items, None, 1))
        txns = [t for t in txns if t[0]]
        covered_all = np.arange(self.np_total, dtype=np.int64)
        try:
            self._context(txns, (), covered_all, self.state.sigma0,
                          parallel=self.cfg.threads > 1)
        except _Timeout:
            self.truncated = True

    def _context(self, txns, ctx_items, covered, scope, parallel=False):
        thresh = self._threshold(covered, scope)
        minc = thresh * self.np_total - SLACK
        agg, counts, tot_pos, tot_neg = fptree.prepare(txns)
        pruned = fptree.prune_items(agg, counts, minc, self.kinds)
        if not pruned:
            return
        if pruned is not agg:
            pruned, counts, tot_pos, tot_neg = fptree.prepare(pruned)

        extensions = []  # (item, pos, neg, source); source resolved per branch
        by_attr = {}
        for it, (p, n) in counts.items():
            if self.kinds[it.attr] == SYMBOLIC:
                if p >= minc:
                    extensions.append((it, p, n, it))
            else:
                by_attr.setdefault(it.attr, {})[it] = (p, n)
        for attr, base_counts in by_attr.items():
            lat = lattice_mod.build_lattice(base_counts, attr, self.n_total[attr])
            if self.cfg.dynamic_merge:
                apos = int(lat.base_pos.sum())
                aneg = int(lat.base_neg.sum())
                if apos == tot_pos and aneg == tot_neg:
                    lat = lattice_mod.dynamic_merge(lat)
            lattice_mod.dp_supports(lat)
            for cell in lattice_mod.screen(lat, minc):
                extensions.append((cell.item, cell.pos, cell.neg, lat))
        if not extensions:
            return
        tree = fptree.build_tree(pruned)
        ordered = order_branches(extensions, self.cfg.measure, self.np_total,
                                 self.nn_total, reorder=self.cfg.reorder,
                                 rank=self._rank)
        if parallel:
            with ThreadPoolExecutor(max_workers=self.cfg.threads) as ex:
                list(ex.map(lambda e: self._branch(e, tree, ctx_items, covered,
                                                   scope), ordered))
            if self.truncated:
                raise _Timeout
        else:
            for ext in ordered:
                self._branch(ext, tree, ctx_items, covered, scope)

    def _branch(self, ext, tree, ctx_items, covered, scope):
        if self.deadline is not None and time.monotonic() > self.deadline:
            if threading.current_thread() is threading.main_thread():
                raise _Timeout
            self.truncated = True
            return
        if self.truncated:
            return
        item, pos, neg, source = ext
        state = self.state
        if self.cfg.bnb:
            cur = self._threshold(covered, scope)
            if pos < cur * self.np_total - SLACK:
                return
        elif pos < 1:
            return
        if self._parallel:
            with state.lock:
                state.visited += 1
        else:
            state.visited += 1
        if isinstance(source, Item):
            nodes = tree.header[source].nodes
        else:
            nodes = []
            for base in source.members_for_item(item):
                entry = tree.header.get(base)
                if entry is not None:
                    nodes.extend(entry.nodes)
        chunks = [n.tids() for n in nodes if n.pos]
        if chunks:
            cov = chunks[0] if len(chunks) == 1 else np.concatenate(chunks)
        else:
            cov = np.empty(0, dtype=np.int64)
        # characterization gate: only patterns whose positive support is no
        # smaller than their negative support enter the per-transaction lists
        if pos * self.nn_total >= neg * self.np_total and pos > 0:
            thr = relevance.support_threshold(self.cfg.measure, pos, neg,
                                              self.np_total, self.nn_total)
            # a pattern strictly below every covered list's tie threshold can
            # neither win nor tie anywhere, so the exact contest is skipped
            if cov.size and thr >= float(state.rej[cov].min()) - SLACK:
                cov_sorted = np.sort(cov)
                key = (relevance.score_pair(self.cfg.measure, pos, neg,
                                            self.np_total, self.nn_total)
                       if state.rational else
                       (relevance.score_float(self.cfg.measure, pos, neg,
                                              self.np_total, self.nn_total),))
                rec = MinedPattern(make_pattern(ctx_items + (item,)), pos, neg,
                                   key, thr, cov_sorted)
                state.record(rec, cov_sorted)
        # recurse with the bound scoped to this pattern's covered positives
        child_scope = scope
        if self.cfg.bnb and cov.size:
            sigma, u_star = raise_threshold(state, cov)
            child_scope = max(scope, u_star)
            # every extension has at most this pattern's positive support, so
            # the subtree is dead once that falls below the support floor
            if pos < max(sigma, child_scope) * self.np_total - SLACK:
                return
        child = fptree.project_prefix(nodes, item.attr)
        if child:
            self._context(child, ctx_items + (item,), cov, child_scope)


# --------------------------------------------------------------------------
# post-hoc constraint filtering


def post_filter(candidate_lists, measure: Measure, n_pos_total: int,
                n_neg_total: int):
    """Apply, in order: most-specific-per-positive-cover (a pattern strictly
    subsuming another with the same positive cover is dropped), then the
    requirement that each survivor still tops at least one positive
    transaction's list."""
    seen = {}
    for lst in candidate_lists:
        for rec in lst:
            seen[id(rec)] = rec
    groups = {}
    for rec in seen.values():
        groups.setdefault(rec.cover.tobytes(), []).append(rec)
    survivors = []
    for recs in groups.values():
        for r in recs:
            if any(s is not r and strictly_subsumes_pattern(r.items, s.items)
                   for s in recs):
                continue
            survivors.append(r)
    if not survivors:
        return []
    rational = relevance.is_rational(measure)
    if rational:
        bn = np.full(n_pos_total, -1, dtype=np.int64)
        bd = np.ones(n_pos_total, dtype=np.int64)
        for r in survivors:
            num, den = r.key
            upd = num * bd[r.cover] > den * bn[r.cover]
            w = r.cover[upd]
            bn[w] = num
            bd[w] = den
        kept = [r for r in survivors
                if bool((r.key[0] * bd[r.cover] == r.key[1] * bn[r.cover]).any())]
    else:
        bf = np.full(n_pos_total, -np.inf)
        for r in survivors:
            w = r.cover[r.key[0] - bf[r.cover] > FLOAT_TOL]
            bf[w] = r.key[0]
        kept = [r for r in survivors
                if bool((np.abs(r.key[0] - bf[r.cover]) <= FLOAT_TOL).any())]
    return kept


def _sort_key(rec: MinedPattern, measure: Measure, n_pos_total, n_neg_total):
    sc = relevance.score(measure, CountStats(rec.n_pos, rec.n_neg),
                         n_pos_total, n_neg_total)
    return (-sc.value, rec.items)


def mine(dataset: Dataset, target_class: str, cfg: Optional[MinerConfig] = None):
    """Mine the (tied) best pattern of every positive transaction.

    Returns the filtered pattern set and run statistics.  Every positive
    transaction that any admissible pattern covers is covered by at least one
    output pattern on a complete (non-truncated) run.
    """
    cfg = cfg or MinerConfig()
    cls = dataset.class_id(target_class)
    if dataset.class_count(cls) == 0:
        raise ValueError(f"class {target_class!r} has no transactions")
    t0 = time.monotonic()
    search = _Search(dataset, cls, cfg)
    search.run()
    kept = post_filter(search.state.lists, cfg.measure,
                       search.np_total, search.nn_total)
    kept.sort(key=lambda r: _sort_key(r, cfg.measure, search.np_total,
                                      search.nn_total))
    results = []
    for r in kept:
        stats = CountStats(r.n_pos, r.n_neg)
        sc = relevance.score(cfg.measure, stats, search.np_total, search.nn_total)
        conf = (Fraction(r.n_pos, r.n_pos + r.n_neg)
                if r.n_pos + r.n_neg else Fraction(0))
        results.append(MinedResult(
            r.items, stats, sc, conf,
            Fraction(r.n_pos, search.np_total),
            tuple(int(search.pos_row_of[t]) for t in r.cover.tolist()),
        ))
    stats = RunStats(
        visited=search.state.visited,
        seconds=time.monotonic() - t0,
        sigma_final=search.state.sigma(),
        truncated=search.truncated,
        sigma_trace=search.state.trace,
    )
    return results, stats
