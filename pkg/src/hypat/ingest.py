"""Table loading, epsilon-precision binning and transactional conversion."""

from __future__ import annotations

import io
from bisect import bisect_right
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Optional

from .model import Attribute, Dataset, NUMERIC, SYMBOLIC, Transaction

CLASS = "class"
IGNORE = "ignore"

DEFAULT_EPSILON = Fraction(1, 10 ** 6)


class InputError(Exception):
    """Malformed or inconsistent input data."""


@dataclass
class TableSchema:
    columns: list          # list of (name, kind) with kind in {symbolic, numeric, class, ignore}
    class_column: str

    def __post_init__(self):
        n_class = sum(1 for _, k in self.columns if k == CLASS)
        if n_class != 1:
            raise InputError(f"schema must have exactly one class column, got {n_class}")
        if sum(1 for _, k in self.columns if k not in (CLASS, IGNORE)) == 0:
            raise InputError("schema has no attribute columns")


@dataclass
class RawTable:
    schema: TableSchema
    rows: list             # per row: list of cell strings (None for empty cells)
    epsilon: Fraction = DEFAULT_EPSILON

    def column(self, name: str) -> int:
        for i, (n, _) in enumerate(self.schema.columns):
            if n == name:
                return i
        raise KeyError(name)


def _parse_decimal(cell: str) -> Optional[Decimal]:
    try:
        d = Decimal(cell)
    except InvalidOperation:
        return None
    if not d.is_finite():
        return None
    return d


def _sniff_delimiter(header_line: str) -> str:
    return "\t" if header_line.count("\t") >= header_line.count(",") else ","


def load_table(source, class_column: Optional[str] = None,
               schema: Optional[TableSchema] = None,
               epsilon: Fraction = DEFAULT_EPSILON) -> RawTable:
    """Parse a delimited text table (comma or tab, header row required).

    Without an explicit schema, a column is numeric iff every non-empty cell
    parses as a finite decimal; the class column is ``class_column`` (default:
    the last column); all other columns are symbolic.
    """
    if hasattr(source, "read"):
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")
    else:
        with io.open(source, "r", encoding="utf-8") as fh:
            text = fh.read()

    lines = [ln for ln in text.splitlines() if ln.strip() != ""]
    if not lines:
        raise InputError("empty table: no header row")
    delim = _sniff_delimiter(lines[0])
    header = [h.strip() for h in lines[0].split(delim)]
    if len(lines) == 1:
        raise InputError("empty table: header only, no data rows")

    rows = []
    for lineno, ln in enumerate(lines[1:], start=2):
        cells = [c.strip() for c in ln.split(delim)]
        if len(cells) != len(header):
            raise InputError(
                f"row {lineno}: expected {len(header)} cells, got {len(cells)}")
        rows.append([c if c != "" else None for c in cells])

    if schema is not None:
        names = [n for n, _ in schema.columns]
        if names != header:
            raise InputError("schema columns do not match table header")
        return RawTable(schema, rows, epsilon)

    cls_name = class_column if class_column is not None else header[-1]
    if cls_name not in header:
        raise InputError(f"unknown class column {cls_name!r}")

    columns = []
    for j, name in enumerate(header):
        if name == cls_name:
            columns.append((name, CLASS))
            continue
        numeric = True
        seen = False
        for r in rows:
            cell = r[j]
            if cell is None:
                continue
            seen = True
            if _parse_decimal(cell) is None:
                numeric = False
                break
        columns.append((name, NUMERIC if (numeric and seen) else SYMBOLIC))
    return RawTable(TableSchema(columns, cls_name), rows, epsilon)


def load_schema_file(path, class_column: Optional[str] = None) -> TableSchema:
    """Schema file: one line per column, ``name kind``."""
    columns = []
    with io.open(path, "r", encoding="utf-8") as fh:
        for ln in fh:
            ln = ln.strip()
            if not ln or ln.startswith("#"):
                continue
            parts = ln.split()
            if len(parts) != 2 or parts[1] not in (SYMBOLIC, NUMERIC, CLASS, IGNORE):
                raise InputError(f"bad schema line: {ln!r}")
            columns.append((parts[0], parts[1]))
    cls = class_column or next((n for n, k in columns if k == CLASS), None)
    if cls is None:
        raise InputError("schema file has no class column")
    columns = [(n, CLASS if n == cls else (k if k != CLASS else SYMBOLIC))
               for n, k in columns]
    return TableSchema(columns, cls)


def bin_value(v, epsilon) -> int:
    """Bin index m = floor(v / epsilon); all of [m*eps, (m+1)*eps) share a bin."""
    eps = Fraction(epsilon)
    if eps <= 0:
        raise InputError("epsilon must be positive")
    if isinstance(v, Decimal):
        if not v.is_finite():
            raise InputError(f"non-finite numeric value {v}")
        fv = Fraction(v)
    else:
        fv = Fraction(v)
    q = fv / eps
    return q.numerator // q.denominator


def bin_representative(m: int, epsilon) -> Fraction:
    """Canonical value of bin m, used for all downstream cut-point arithmetic."""
    return m * Fraction(epsilon)


def numeric_column_values(table: RawTable, col: int):
    """(bin representative, class label) pairs for one numeric column."""
    cls_col = table.column(table.schema.class_column)
    out = []
    for rowno, r in enumerate(table.rows, start=2):
        cell = r[col]
        if cell is None:
            continue
        d = _parse_decimal(cell)
        if d is None:
            raise InputError(
                f"row {rowno}, column {table.schema.columns[col][0]!r}: "
                f"cell {cell!r} is not numeric")
        out.append((bin_representative(bin_value(d, table.epsilon), table.epsilon),
                    r[cls_col]))
    return out


def to_transactions(table: RawTable, cutpoints: dict, class_of_interest: str) -> Dataset:
    """Convert a raw table into transactions over base intervals and symbols.

    Numeric cells map to the unique base interval containing their bin
    representative; symbolic cells map to symbol ids.  All classes other than
    ``class_of_interest`` collapse into one virtual complement class.
    """
    cls_col = table.column(table.schema.class_column)
    attr_cols = [(j, name, kind) for j, (name, kind) in enumerate(table.schema.columns)
                 if kind in (SYMBOLIC, NUMERIC)]

    symbol_tables = {j: {} for j, _, kind in attr_cols if kind == SYMBOLIC}
    attrs = []
    for idx, (j, name, kind) in enumerate(attr_cols):
        if kind == NUMERIC:
            cp = cutpoints.get(name)
            if cp is None:
                raise InputError(f"no cut points for numeric column {name!r}")
            attrs.append(Attribute(idx, name, NUMERIC, cuts=tuple(cp)))
        else:
            attrs.append(Attribute(idx, name, SYMBOLIC))

    classes = [class_of_interest, "not_" + class_of_interest]
    transactions = []
    for rowno, r in enumerate(table.rows, start=2):
        label = r[cls_col]
        if label is None:
            raise InputError(f"row {rowno}: empty class label")
        cls = 0 if label == class_of_interest else 1
        values = []
        for idx, (j, name, kind) in enumerate(attr_cols):
            cell = r[j]
            if cell is None:
                values.append(None)
            elif kind == NUMERIC:
                d = _parse_decimal(cell)
                if d is None:
                    raise InputError(f"row {rowno}, column {name!r}: "
                                     f"cell {cell!r} is not numeric")
                rep = bin_representative(bin_value(d, table.epsilon),
                                         table.epsilon)
                values.append(bisect_right(attrs[idx].cuts, rep))
            else:
                tab = symbol_tables[j]
                if cell not in tab:
                    tab[cell] = len(tab)
                values.append(tab[cell])
        transactions.append(Transaction(tuple(values), cls))

    attrs = [
        Attribute(a.index, a.name, a.kind, cuts=a.cuts,
                  symbols=tuple(sorted(symbol_tables[attr_cols[a.index][0]],
                                       key=symbol_tables[attr_cols[a.index][0]].get))
                  ) if a.kind == SYMBOLIC else a
        for a in attrs
    ]
    if not any(t.cls == 0 for t in transactions):
        raise InputError(f"class {class_of_interest!r} has no transactions")
    return Dataset(attrs, transactions, classes)
