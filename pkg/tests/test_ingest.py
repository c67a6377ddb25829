import io
from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hypat.ingest import (InputError, bin_representative, bin_value,
                          load_schema_file, load_table, to_transactions)
from hypat.discretize import build_cutpoints
from hypat.model import NUMERIC, SYMBOLIC


def test_auto_schema_on_iris(iris_table):
    kinds = dict(iris_table.schema.columns)
    assert sum(1 for k in kinds.values() if k == NUMERIC) == 4
    assert kinds["class"] == "class"
    assert len(iris_table.rows) == 150


def test_auto_schema_mixed_types(toy6_table):
    kinds = dict(toy6_table.schema.columns)
    assert kinds == {"color": SYMBOLIC, "A": NUMERIC, "class": "class"}


def test_header_only_is_an_error():
    with pytest.raises(InputError, match="header only"):
        load_table(io.StringIO("a,b,class\n"))


def test_empty_file_is_an_error():
    with pytest.raises(InputError, match="empty table"):
        load_table(io.StringIO(""))


def test_unknown_class_column_is_an_error():
    with pytest.raises(InputError, match="unknown class column"):
        load_table(io.StringIO("a,b\n1,2\n"), class_column="target")


def test_ragged_row_is_an_error_naming_the_row():
    with pytest.raises(InputError, match="row 3"):
        load_table(io.StringIO("a,b,class\n1,2,x\n1,2\n"))


def test_tab_delimiter_is_sniffed():
    t = load_table(io.StringIO("a\tclass\n1.5\tx\n2.5\ty\n"))
    assert dict(t.schema.columns)["a"] == NUMERIC


def test_empty_cells_become_missing_slots():
    t = load_table(io.StringIO("s,a,class\nu,,x\n,2.0,x\nv,3.0,y\n"))
    ds = to_transactions(t, build_cutpoints(t, "x"), "x")
    assert ds.transactions[0].values[1] is None
    assert ds.transactions[1].values[0] is None


def test_schema_file_roundtrip(tmp_path):
    p = tmp_path / "schema.txt"
    p.write_text("color symbolic\nA numeric\nclass class\n")
    schema = load_schema_file(p)
    assert schema.class_column == "class"
    assert dict(schema.columns)["A"] == NUMERIC


def test_bin_value_examples():
    assert bin_value(Decimal("0.0"), Fraction(1, 100)) == 0
    assert bin_value(Decimal("2.449"), Fraction(1, 100)) == 244
    assert bin_value(Decimal("2.441"), Fraction(1, 100)) == 244
    assert bin_value(Decimal("-0.005"), Fraction(1, 100)) == -1


def test_bin_value_rejects_non_finite():
    with pytest.raises(InputError):
        bin_value(Decimal("NaN"), Fraction(1, 100))


@given(st.integers(-10 ** 6, 10 ** 6), st.fractions(min_value="1/1000000", max_value=2))
def test_binning_is_idempotent_on_representatives(m, eps):
    assert bin_value(bin_representative(m, eps), eps) == m


def test_to_transactions_toy6(toy6_table, toy6):
    assert [t.cls for t in toy6.transactions] == [0, 0, 0, 1, 1, 1]
    # 1.0 -> first base, 2.2 -> second, 3.0 -> third, 4.0/5.0 -> fourth
    assert [t.values[1] for t in toy6.transactions] == [0, 0, 2, 3, 3, 1]
    color = toy6.attrs[0]
    assert color.symbols == ("r", "b")


def test_to_transactions_partitions_every_value(toy6_table, toy6):
    a = toy6.attrs[1]
    for t in toy6.transactions:
        b = t.values[1]
        assert 0 <= b <= len(a.cuts)


def test_virtual_class_collapse():
    csv = "x,class\n1.0,s\n2.0,v\n3.0,g\n"
    t = load_table(io.StringIO(csv))
    ds = to_transactions(t, build_cutpoints(t, "s"), "s")
    assert ds.classes == ["s", "not_s"]
    assert [tr.cls for tr in ds.transactions] == [0, 1, 1]


def test_row_and_class_counts_preserved(iris_table):
    ds = to_transactions(iris_table, build_cutpoints(iris_table, "setosa"),
                         "setosa")
    assert len(ds.transactions) == 150
    assert ds.class_count(0) == 50
    assert ds.class_count(1) == 100


def test_iris_setosa_row_lands_below_first_petal_cut(iris_table):
    ds = to_transactions(iris_table, build_cutpoints(iris_table, "setosa"),
                         "setosa")
    petal_len = next(a for a in ds.attrs if a.name == "petal_len")
    # every setosa petal length sits inside the region below 2.45
    k = petal_len.cuts.index(Fraction(49, 20)) + 1
    for t in ds.transactions:
        if t.cls == 0:
            assert t.values[petal_len.index] < k
