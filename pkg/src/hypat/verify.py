"""Seeded random instances and miner-vs-oracle cross checking."""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Optional

from .discretize import build_cutpoints
from .ingest import RawTable, TableSchema, to_transactions
from .miner import MinerConfig, mine
from .model import Dataset, NUMERIC, SYMBOLIC
from .oracle import oracle_mine
from .relevance import Measure

_SYMBOLS = ["a", "b", "c"]
_NUMERIC_GRID = ["0.5", "1.5", "2.5", "3.5", "4.5"]


def random_table(rng: random.Random):
    """A small random mixed-domain table plus a class of interest.

    Bounded so that the full pattern space stays enumerable: at most 10 rows,
    2 symbolic and 3 numeric attributes, 5 distinct numeric values.  Rows may
    repeat; cells are never missing.
    """
    n_sym = rng.randint(0, 2)
    n_num = rng.randint(0 if n_sym else 1, 3)
    n_rows = rng.randint(2, 10)
    n_classes = rng.choice([2, 2, 2, 3])
    columns = ([(f"s{i}", SYMBOLIC) for i in range(n_sym)]
               + [(f"x{i}", NUMERIC) for i in range(n_num)]
               + [("class", "class")])
    class_names = ["c0", "c1", "c2"][:n_classes]
    rows = []
    for _ in range(n_rows):
        row = [rng.choice(_SYMBOLS) for _ in range(n_sym)]
        row += [rng.choice(_NUMERIC_GRID) for _ in range(n_num)]
        row.append(rng.choice(class_names))
        rows.append(row)
    present = sorted({r[-1] for r in rows})
    target = rng.choice(present)
    return RawTable(TableSchema(columns, "class"), rows), target


def instance_dataset(table: RawTable, target: str) -> Dataset:
    cuts = build_cutpoints(table, target)
    return to_transactions(table, cuts, target)


@dataclass
class Mismatch:
    seed: int
    kind: str
    detail: str


def results_equal(a, b) -> bool:
    return [(r.pattern, r.stats, r.score, r.confidence, r.positive_support,
             r.cover) for r in a] == \
           [(r.pattern, r.stats, r.score, r.confidence, r.positive_support,
             r.cover) for r in b]


def check_instance(seed: int, measure: Measure = Measure.FSCORE,
                   configs: Optional[list] = None):
    """Compare the tree miner against the oracle on one random instance;
    optionally also require the extra configurations to agree."""
    rng = random.Random(seed)
    table, target = random_table(rng)
    ds = instance_dataset(table, target)
    expected = oracle_mine(ds, target, measure)
    got, _ = mine(ds, target, MinerConfig(measure=measure))
    out = []
    if not results_equal(expected, got):
        out.append(Mismatch(seed, "oracle", _diff(expected, got)))
    for cfg in configs or []:
        alt, _ = mine(ds, target, cfg)
        if not results_equal(expected, alt):
            out.append(Mismatch(seed, _cfg_name(cfg), _diff(expected, alt)))
    return out


def _cfg_name(cfg: MinerConfig) -> str:
    bits = []
    if not cfg.bnb:
        bits.append("no-bnb")
    if not cfg.reorder:
        bits.append("no-reorder")
    if not cfg.dynamic_merge:
        bits.append("no-merge")
    if cfg.threads > 1:
        bits.append(f"threads={cfg.threads}")
    return ",".join(bits) or "default"


def _diff(expected, got) -> str:
    e = {r.pattern for r in expected}
    g = {r.pattern for r in got}
    return (f"only-expected={sorted(e - g)} only-got={sorted(g - e)} "
            f"expected={len(expected)} got={len(got)}")


def toggled_configs(measure: Measure = Measure.FSCORE):
    base = MinerConfig(measure=measure)
    return [
        replace(base, bnb=False),
        replace(base, reorder=False),
        replace(base, dynamic_merge=False),
        replace(base, threads=4),
    ]


def run_battery(n_instances: int, seed: int = 0,
                measure: Measure = Measure.FSCORE,
                with_toggles: bool = False):
    configs = toggled_configs(measure) if with_toggles else None
    mismatches = []
    for k in range(n_instances):
        mismatches.extend(check_instance(seed + k, measure, configs))
    return mismatches
