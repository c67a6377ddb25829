"""Command-line front end: mining runs, cut-point dumps, random verification,
and rendering of patterns as inequality expressions."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

from . import __version__
from .discretize import build_cutpoints
from .ingest import (DEFAULT_EPSILON, InputError, RawTable, load_schema_file,
                     load_table)
from .ingest import to_transactions
from .miner import MinerConfig, RunStats, mine
from .model import NUMERIC, SYMBOL
from .relevance import Measure, is_rational
from .verify import run_battery


def fraction_str(f: Fraction) -> str:
    """Exact decimal rendering with minimal digits (cut points terminate)."""
    num, den = f.numerator, f.denominator
    sign = "-" if num < 0 else ""
    num = abs(num)
    ipart, rem = divmod(num, den)
    if rem == 0:
        return f"{sign}{ipart}"
    digits = []
    while rem and len(digits) < 40:
        rem *= 10
        d, rem = divmod(rem, den)
        digits.append(str(d))
    if rem:
        return repr(num / den if not sign else -num / den)
    return f"{sign}{ipart}." + "".join(digits)


def round3(v) -> str:
    """Half-even rounding to three digits, computed exactly."""
    f = v if isinstance(v, Fraction) else Fraction(v)
    neg = f < 0
    scaled = abs(f) * 1000
    q, r = divmod(scaled.numerator, scaled.denominator)
    frac = Fraction(r, scaled.denominator)
    if frac > Fraction(1, 2) or (frac == Fraction(1, 2) and q % 2 == 1):
        q += 1
    s = f"{q // 1000}.{q % 1000:03d}"
    return "-" + s if neg and q else s


def render_item(item, attrs) -> str:
    a = attrs[item.attr]
    if item.hi == SYMBOL:
        return f"{a.name}={a.symbols[item.lo]}"
    lo = fraction_str(a.cuts[item.lo - 1]) if item.lo > 0 else None
    hi = fraction_str(a.cuts[item.hi - 1]) if item.hi < a.n_bases else None
    if lo is None:
        return f"{a.name}<{hi}"
    if hi is None:
        return f"{lo}<={a.name}"
    return f"{lo}<={a.name}<{hi}"


def render_pattern(pattern, attrs) -> str:
    return "{" + ", ".join(render_item(it, attrs) for it in pattern) + "}"


@dataclass
class ClassSection:
    target: str
    attrs: list
    results: list
    stats: RunStats


@dataclass
class RunReport:
    sections: list
    config: dict

    @property
    def truncated(self) -> bool:
        return any(s.stats.truncated for s in self.sections)


def _score_json(score):
    if is_rational(score.measure):
        v = score.value
        return {"num": v.numerator, "den": v.denominator, "decimal": round3(v)}
    return {"value": score.value, "decimal": round3(score.value)}


def _frac_json(f: Fraction):
    return {"num": f.numerator, "den": f.denominator, "decimal": round3(f)}


def emit_report(report: RunReport, fmt: str = "table") -> str:
    if fmt == "json":
        doc = {
            "config": report.config,
            "truncated": report.truncated,
            "classes": [
                {
                    "class": s.target,
                    "visited": s.stats.visited,
                    "seconds": round(s.stats.seconds, 3),
                    "sigma_final": s.stats.sigma_final,
                    "truncated": s.stats.truncated,
                    "patterns": [
                        {
                            "pattern": render_pattern(r.pattern, s.attrs),
                            "confidence": _frac_json(r.confidence),
                            "positive_support": _frac_json(r.positive_support),
                            "score": _score_json(r.score),
                            "n_pos": r.stats.n_pos,
                            "n_neg": r.stats.n_neg,
                        }
                        for r in s.results
                    ],
                }
                for s in report.sections
            ],
        }
        return json.dumps(doc, indent=2) + "\n"

    lines = []
    if fmt == "tsv":
        for s in report.sections:
            for r in s.results:
                lines.append("\t".join([
                    s.target, round3(r.confidence), round3(r.positive_support),
                    round3(r.score.value if is_rational(r.score.measure)
                           else Fraction(r.score.value)),
                    render_pattern(r.pattern, s.attrs),
                ]))
        return "\n".join(lines) + ("\n" if lines else "")

    head = f"{'class':<14} {'conf':>6} {'supp':>6} {'score':>6}  pattern"
    lines.append(head)
    lines.append("-" * len(head))
    for s in report.sections:
        for r in s.results:
            lines.append(f"{s.target:<14} {round3(r.confidence):>6} "
                         f"{round3(r.positive_support):>6} "
                         f"{round3(r.score.value if is_rational(r.score.measure) else Fraction(r.score.value)):>6}"
                         f"  {render_pattern(r.pattern, s.attrs)}")
        flag = "  [truncated]" if s.stats.truncated else ""
        lines.append(f"# {s.target}: {len(s.results)} patterns, "
                     f"{s.stats.visited} candidates visited, "
                     f"{s.stats.seconds:.2f}s{flag}")
    lines.append(f"# config: {report.config}")
    return "\n".join(lines) + "\n"


def _class_labels(table: RawTable) -> list:
    col = table.column(table.schema.class_column)
    out = []
    for r in table.rows:
        if r[col] is not None and r[col] not in out:
            out.append(r[col])
    return out


def _build_parser():
    p = argparse.ArgumentParser(prog="hypat",
                                description="Discriminative pattern mining over "
                                            "mixed symbolic/numeric tables")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True)

    def add_io(sp):
        sp.add_argument("--input", required=True, help="CSV/TSV file, header row required")
        sp.add_argument("--class-column", default=None,
                        help="class column name (default: last column)")
        sp.add_argument("--schema", default=None,
                        help="optional schema file: one 'name kind' line per column")
        sp.add_argument("--epsilon", default=None,
                        help="value precision; values within one epsilon bin are identical "
                             "(default 1e-6)")
        sp.add_argument("--target-class", default=None,
                        help="mine only this class (default: every class in turn)")

    m = sub.add_parser("mine", help="mine discriminative patterns")
    add_io(m)
    m.add_argument("--measure", default="fscore",
                   choices=[x.value for x in Measure])
    m.add_argument("--time-limit", type=float, default=None,
                   help="seconds per class; truncated runs keep the best found so far")
    m.add_argument("--no-reorder", action="store_true",
                   help="disable relevance-based branch re-ordering")
    m.add_argument("--no-merge", action="store_true",
                   help="disable dynamic merging of pure neighbouring bases")
    m.add_argument("--no-bnb", action="store_true",
                   help="disable threshold raising (testing only)")
    m.add_argument("--threads", type=int, default=1)
    m.add_argument("--dump-cuts", action="store_true",
                   help="print cut points before mining")
    m.add_argument("--format", default="table", choices=["table", "tsv", "json"])
    m.add_argument("--output", default=None, help="write the report here instead of stdout")

    c = sub.add_parser("cuts", help="print adaptive cut points")
    add_io(c)

    v = sub.add_parser("verify", help="cross-check the miner against the "
                                      "brute-force reference on random instances")
    v.add_argument("--instances", type=int, default=50)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--measure", default="fscore", choices=[x.value for x in Measure])
    v.add_argument("--toggles", action="store_true",
                   help="also require agreement with no-bnb/no-reorder/no-merge/threads runs")
    return p


def _load(args) -> RawTable:
    schema = None
    if args.schema:
        schema = load_schema_file(args.schema, args.class_column)
    eps = Fraction(Decimal(args.epsilon)) if args.epsilon else DEFAULT_EPSILON
    if eps <= 0:
        raise InputError("epsilon must be positive")
    return load_table(args.input, class_column=args.class_column,
                      schema=schema, epsilon=eps)


def _dump_cuts(table: RawTable, target: str, cuts: dict, out) -> None:
    print(f"# class {target}", file=out)
    for name, kind in table.schema.columns:
        if kind == NUMERIC:
            vals = ",".join(fraction_str(v) for v in cuts.get(name, []))
            print(f"{name}\t{vals}", file=out)


def _cmd_mine(args) -> int:
    table = _load(args)
    targets = [args.target_class] if args.target_class else _class_labels(table)
    cfg = MinerConfig(
        measure=Measure(args.measure),
        dynamic_merge=not args.no_merge,
        reorder=not args.no_reorder,
        bnb=not args.no_bnb,
        threads=args.threads,
        time_limit=args.time_limit,
    )
    sections = []
    for target in targets:
        cuts = build_cutpoints(table, target)
        if args.dump_cuts:
            _dump_cuts(table, target, cuts, sys.stderr)
        ds = to_transactions(table, cuts, target)
        results, stats = mine(ds, target, cfg)
        sections.append(ClassSection(target, ds.attrs, results, stats))
    report = RunReport(sections, {
        "input": args.input, "measure": args.measure,
        "epsilon": args.epsilon or str(float(DEFAULT_EPSILON)),
        "reorder": cfg.reorder, "merge": cfg.dynamic_merge, "bnb": cfg.bnb,
        "threads": cfg.threads, "time_limit": cfg.time_limit,
    })
    text = emit_report(report, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 3 if report.truncated else 0


def _cmd_cuts(args) -> int:
    table = _load(args)
    targets = [args.target_class] if args.target_class else _class_labels(table)
    for target in targets:
        _dump_cuts(table, target, build_cutpoints(table, target), sys.stdout)
    return 0


def _cmd_verify(args) -> int:
    mismatches = run_battery(args.instances, seed=args.seed,
                             measure=Measure(args.measure),
                             with_toggles=args.toggles)
    if mismatches:
        for m in mismatches:
            print(f"MISMATCH seed={m.seed} [{m.kind}] {m.detail}")
        print(f"{len(mismatches)} mismatches over {args.instances} instances")
        return 1
    print(f"ok: {args.instances} instances match the reference")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.cmd == "mine":
            return _cmd_mine(args)
        if args.cmd == "cuts":
            return _cmd_cuts(args)
        return _cmd_verify(args)
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
