import io

import pytest

from hypat.discretize import build_cutpoints
from hypat.ingest import load_table, to_transactions
from hypat.model import CountStats, Item, sym_item
from hypat.oracle import OracleLimits, enumerate_patterns, oracle_mine


def _dataset(csv, target):
    table = load_table(io.StringIO(csv))
    return to_transactions(table, build_cutpoints(table, target), target)


def test_toy6_enumeration_size(toy6):
    # color: none/r/b; A: none plus C(5,2)-1 intervals; empty excluded
    assert sum(1 for _ in enumerate_patterns(toy6)) == 3 * 10 - 1


def test_enumeration_single_symbolic_attribute():
    ds = _dataset("s,class\nu,a\nv,b\n", "a")
    assert sorted(enumerate_patterns(ds)) == [(sym_item(0, 0),), (sym_item(0, 1),)]


def test_enumeration_two_bases_excludes_full_range():
    ds = _dataset("x,class\n1.0,a\n2.0,b\n", "a")
    pats = sorted(enumerate_patterns(ds))
    assert pats == [(Item(0, 0, 1),), (Item(0, 1, 2),)]


def test_enumeration_cap():
    ds = _dataset("s,class\nu,a\nv,b\n", "a")
    with pytest.raises(ValueError, match="exceeds cap"):
        list(enumerate_patterns(ds, OracleLimits(max_patterns=1)))


def test_oracle_toy6(toy6):
    results = oracle_mine(toy6, "pos")
    assert len(results) == 1
    assert results[0].pattern == (Item(1, 0, 3),)
    assert results[0].stats == CountStats(3, 1)


def test_unique_signature_positive_appears_fully_specified():
    csv = "s,t,class\nu,x,a\nv,y,b\nv,z,b\n"
    results = oracle_mine(_dataset(csv, "a"), "a")
    assert [r.pattern for r in results] == [(sym_item(0, 0), sym_item(1, 0))]


def test_all_positive_dataset_keeps_most_specific_full_cover():
    csv = "s,x,class\nu,1.0,a\nu,1.0,a\n"
    results = oracle_mine(_dataset(csv, "a"), "a")
    # one distinct numeric value gives no intervals; the symbol covers all
    assert [r.pattern for r in results] == [(sym_item(0, 0),)]
    assert results[0].stats == CountStats(2, 0)
