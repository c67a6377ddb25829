#!/usr/bin/env python3
"""Regenerate tests/data/iris.csv as distributed by the UCI repository.

scikit-learn ships the corrected version of the measurements; the UCI file
differs in two cells of rows 35 and 38 (1-based).  Those edits are reversed
here so the fixture matches the file most published results are based on.
"""

import pathlib

from sklearn.datasets import load_iris

OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data" / "iris.csv"


def main():
    d = load_iris()
    rows = [[f"{v:.1f}" for v in row] for row in d.data]
    labels = [d.target_names[t] for t in d.target]
    # sklearn order: sepal length, sepal width, petal length, petal width
    rows[34][3] = "0.1"                 # UCI row 35: fourth feature
    rows[37][1], rows[37][2] = "3.1", "1.5"   # UCI row 38: second and third
    lines = ["sepal_len,sepal_wid,petal_len,petal_wid,class"]
    for row, label in zip(rows, labels):
        lines.append(",".join(row + [label]))
    OUT.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {OUT} ({len(rows)} rows)")


if __name__ == "__main__":
    main()
