"""Command-line front end: ``hierorder {seq,table,rank,enum,sample,verify}``.

Data goes to stdout, diagnostics to stderr. Exit status is 0 only when the
command did everything it was asked to.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Sequence

from . import asymptotics as asy
from .sequences import SequenceKind, format_count, sequence
from .structures import (
    enumerate_orderings,
    enumerate_unlabeled_orderings,
    format_structure,
    format_unlabeled,
    sample_hierarchies,
)

SEQ_KINDS = [k.value for k in SequenceKind]
TABLE_KINDS = ["B", "H", "U"]
DEFAULT_MAX_DIGITS = 10**6
LABELED_MEAN_SLOPE = 1.0 / (4.0 * math.log(2.0))


class UsageError(Exception):
    pass


def _resolve(positional, flag, name, default=None):
    if positional is not None and flag is not None and positional != flag:
        raise UsageError(f"{name} given twice with different values")
    value = positional if positional is not None else flag
    return default if value is None else value


def _range(args) -> tuple[int, int]:
    start = _resolve(args.start_pos, args.start, "--from", 0)
    stop = _resolve(args.stop_pos, args.stop, "--to", start)
    if start < 0 or stop < start:
        raise UsageError(f"bad range {start}..{stop}; need 0 <= from <= to")
    return start, stop


def _kind(args, allowed) -> str:
    if args.kind not in allowed:
        raise UsageError(f"unknown kind {args.kind!r}; choose from {', '.join(allowed)}")
    return args.kind


# --- seq -------------------------------------------------------------------


def cmd_seq(args, out) -> int:
    kind = _kind(args, SEQ_KINDS)
    start, stop = _range(args)
    fmt = _resolve(args.fmt_pos, args.format, "--format", "bfile")
    if fmt not in ("bfile", "csv", "json"):
        raise UsageError(f"unknown format {fmt!r}")
    if kind == "C" and start == 0:
        raise UsageError("compositions are counted for n >= 1")
    rows = [(n, format_count(sequence(kind, n))) for n in range(start, stop + 1)]
    if fmt == "bfile":
        out.write("".join(f"{n} {v}\n" for n, v in rows))
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "exact"])
        w.writerows(rows)
    else:
        json.dump([{"n": n, "exact": v} for n, v in rows], out)
        out.write("\n")
    return 0


# --- table -----------------------------------------------------------------

_ESTIMATORS = {
    "B": asy.ordered_bell_asymptotic_log,
    "H": asy.hierarchical_asymptotic_log,
    "U": asy.unlabeled_asymptotic_log,
}


def _exact_text(value: int, max_digits: int) -> str:
    if value == 0:
        return "0"
    log10 = asy.log_count(value) / math.log(10.0)
    if math.floor(log10) + 1 > max_digits:
        return f"log10≈{log10:.6f}"
    return format_count(value)


def table_rows(kind: str, start: int, stop: int, *, corrected: bool = False) -> list[dict]:
    """One record per n: exact count, log of the estimate, estimate/exact."""
    est = _ESTIMATORS[kind]
    rows = []
    for n in range(max(start, 1), stop + 1):
        exact = sequence(kind, n)
        kw = {"include_secondary_poles": True} if (kind == "U" and corrected) else {}
        e = est(n, exact, **kw)
        rows.append({"n": n, "exact_value": exact, "estimate": e})
    return rows


def cmd_table(args, out) -> int:
    kind = _kind(args, TABLE_KINDS)
    start, stop = _range(args)
    if start < 1:
        start = max(start, 1)
        if stop < 1:
            raise UsageError("asymptotic tables start at n = 1")
    rows = table_rows(kind, start, stop, corrected=args.corrected)
    fmt = args.format or "tsv"
    if fmt == "json":
        json.dump(
            [
                {
                    "n": r["n"],
                    "exact": format_count(r["exact_value"]),
                    "asymptotic": r["estimate"].log_value,
                    "ratio": r["estimate"].ratio_to_exact,
                }
                for r in rows
            ],
            out,
        )
        out.write("\n")
    elif fmt in ("tsv", "csv"):
        w = csv.writer(out, delimiter="\t" if fmt == "tsv" else ",", lineterminator="\n")
        w.writerow(["n", "exact", "estimate", "log_estimate", "ratio"])
        for r in rows:
            e = r["estimate"]
            w.writerow(
                [
                    r["n"],
                    _exact_text(r["exact_value"], args.max_digits),
                    e.scientific(),
                    f"{e.log_value:.10f}",
                    f"{e.ratio_to_exact:.12f}",
                ]
            )
    else:
        raise UsageError(f"unknown format {fmt!r}")
    if args.plot:
        from .figures import plot_convergence

        plot_convergence(
            [r["n"] for r in rows],
            [r["estimate"].ratio_to_exact for r in rows],
            args.plot,
            label=kind,
        )
        print(f"wrote {args.plot}", file=sys.stderr)
    return 0


# --- rank ------------------------------------------------------------------


def cmd_rank(args, out) -> int:
    from .ranks import labeled_rank_distribution, unlabeled_rank_distribution

    model = _resolve(args.model_pos, args.model, "--model", "labeled")
    if model not in ("labeled", "unlabeled"):
        raise UsageError(f"unknown model {model!r}")
    if args.n < 1:
        raise UsageError("n must be >= 1")
    n = args.n
    dist = labeled_rank_distribution(n) if model == "labeled" else unlabeled_rank_distribution(n)
    out.write(dist.format() + "\n")
    if model == "labeled":
        out.write(f"mean ≈ {float(dist.mean):.6f}, limit 0.36067·n = {LABELED_MEAN_SLOPE * n:.6f}\n")
    if args.plot:
        from .figures import plot_rank_distribution

        plot_rank_distribution(dist, args.plot, title=f"{model}, n = {n}")
        print(f"wrote {args.plot}", file=sys.stderr)
    return 0


# --- enum / sample ---------------------------------------------------------


def cmd_enum(args, out) -> int:
    model = _resolve(args.model_pos, args.model, "--model", "labeled")
    if model == "labeled":
        stream = (format_structure(s) for s in enumerate_orderings(args.n))
    elif model == "unlabeled":
        stream = (format_unlabeled(s) for s in enumerate_unlabeled_orderings(args.n))
    else:
        raise UsageError(f"unknown model {model!r}")
    count = 0
    for line in stream:
        out.write(line + "\n")
        count += 1
    out.write(f"count: {count}\n")
    return 0


def cmd_sample(args, out) -> int:
    if args.n < 1 or args.count < 0:
        raise UsageError("need n >= 1 and count >= 0")
    for h in sample_hierarchies(args.n, args.count, seed=args.seed):
        out.write(format_structure(h) + "\n")
    return 0


# --- verify ----------------------------------------------------------------


def cmd_verify(args, out) -> int:
    from .verify import inject_fault, run_checks

    level = _resolve(args.level_pos, args.level, "--level", "quick")
    if level not in ("quick", "full"):
        raise UsageError(f"unknown level {level!r}")
    if args.inject_fault:
        inject_fault()
    results = run_checks(level)
    for r in results:
        out.write(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail} ({r.seconds:.2f}s)\n")
    failed = sum(not r.passed for r in results)
    out.write(f"{len(results) - failed}/{len(results)} checks passed\n")
    return 1 if failed else 0


# --- parser ----------------------------------------------------------------


def _add_range(p):
    p.add_argument("start_pos", nargs="?", type=int, metavar="FROM")
    p.add_argument("stop_pos", nargs="?", type=int, metavar="TO")
    p.add_argument("--from", dest="start", type=int)
    p.add_argument("--to", dest="stop", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hierorder", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seq", help="print a sequence (B, H, U, HH, C)")
    p.add_argument("kind", metavar="KIND")
    _add_range(p)
    p.add_argument("fmt_pos", nargs="?", metavar="FORMAT")
    p.add_argument("--format", choices=["bfile", "csv", "json"])
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("table", help="exact values against their asymptotic estimates (B, H, U)")
    p.add_argument("kind", metavar="KIND")
    _add_range(p)
    p.add_argument("--format", choices=["tsv", "csv", "json"])
    p.add_argument("--max-digits", type=int, default=DEFAULT_MAX_DIGITS,
                   help="print log10 instead of the exact value beyond this many digits")
    p.add_argument("--corrected", action="store_true",
                   help="for U, include the factor from the secondary poles of log U")
    p.add_argument("--plot", metavar="PATH", help="also write a convergence figure")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("rank", help="exact rank distribution of a random element")
    p.add_argument("n", type=int)
    p.add_argument("model_pos", nargs="?", metavar="MODEL")
    p.add_argument("--model", choices=["labeled", "unlabeled"])
    p.add_argument("--plot", metavar="PATH", help="also write a bar chart")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("enum", help="list every structure in text notation")
    p.add_argument("n", type=int)
    p.add_argument("model_pos", nargs="?", metavar="MODEL")
    p.add_argument("--model", choices=["labeled", "unlabeled"])
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("sample", help="draw uniform random hierarchies")
    p.add_argument("n", type=int)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("verify", help="run the cross-check suite")
    p.add_argument("level_pos", nargs="?", metavar="LEVEL")
    p.add_argument("--level", choices=["quick", "full"])
    p.add_argument("--inject-fault", action="store_true",
                   help="corrupt one table entry first (the run must then fail)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, ValueError, TypeError, ArithmeticError) as exc:
        print(f"hierorder {args.command}: {exc}", file=sys.stderr)
        return 1


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run the CLI in-process and capture stdout."""
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
