#!/usr/bin/env python3
"""Produce tests/data/german.csv from the UCI statlog german credit data.

Usage:
    python scripts/fetch_german.py [path/to/german.data]

Without an argument the script tries to download the file from the UCI
repository.  The output keeps the symbolic codes (A11, A61, ...) verbatim and
maps the class labels 1/2 to good/bad.
"""

import pathlib
import sys
import urllib.request

URL = ("https://archive.ics.uci.edu/ml/machine-learning-databases/"
       "statlog/german/german.data")

COLUMNS = [
    "checking_status", "duration", "credit_history", "purpose",
    "credit_amount", "savings_status", "employment", "install_commit",
    "personal_status", "other_parties", "residence_since",
    "property_magnitude", "age", "other_payment_plans", "housing",
    "exist_cred", "job", "num_dependents", "own_telephone",
    "foreign_worker", "class",
]

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data" / "german.csv"


def main(argv):
    if len(argv) > 1:
        text = pathlib.Path(argv[1]).read_text(encoding="utf-8")
    else:
        print(f"downloading {URL}")
        text = urllib.request.urlopen(URL, timeout=30).read().decode("utf-8")
    rows = []
    for line in text.splitlines():
        parts = line.split()
        if not parts:
            continue
        if len(parts) != 21:
            raise SystemExit(f"unexpected field count {len(parts)}: {line!r}")
        parts[-1] = {"1": "good", "2": "bad"}[parts[-1]]
        rows.append(",".join(parts))
    if len(rows) != 1000:
        raise SystemExit(f"expected 1000 rows, got {len(rows)}")
    OUT.write_text(",".join(COLUMNS) + "\n" + "\n".join(rows) + "\n",
                   encoding="utf-8")
    print(f"wrote {OUT} ({len(rows)} rows)")


if __name__ == "__main__":
    main(sys.argv)
