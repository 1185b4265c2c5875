"""Command-line interface: ``substfreq {freq-set,verify,rauzy,bound}``.

Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.
Results go to stdout as JSON, CSV or DOT; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction

from . import closed_form, rauzy as rz, symmetry
from .empirical import DEFAULT_PREFIX
from .frid import FridContext, gtm_context
from .language import build_index
from .verify import verify_gtm
from .words import gtm_morphism

SCHEMA = "substfreq/1"

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("substfreq")


class UsageError(Exception):
    pass


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _dump(obj) -> str:
    return json.dumps(obj, separators=(", ", ": ")) + "\n"


def _check_bm(args):
    if args.b < 2:
        raise UsageError(f"-b must be at least 2, got {args.b}")
    if not 1 <= args.m <= 36:
        raise UsageError(f"-m must lie in [1, 36], got {args.m}")


def _lengths(args) -> list[int] | None:
    if args.N is not None and args.range is not None:
        raise UsageError("use either -N or --range, not both")
    if args.N is not None:
        if args.N < 0:
            raise UsageError("-N must be non-negative")
        return [args.N]
    if args.range is not None:
        lo, hi = args.range
        if lo < 0 or hi < lo:
            raise UsageError(f"invalid range {lo}..{hi}")
        return list(range(lo, hi + 1))
    return None


def cmd_freq_set(args, out) -> int:
    _check_bm(args)
    ctx = closed_form.context(args.b, args.m)
    lengths = _lengths(args)
    if lengths is None:
        if not ctx.periodic:
            raise UsageError("give -N or --range for an aperiodic word")
        out.write(_dump({"schema": SCHEMA, "b": args.b, "m": args.m,
                         "periodic": True, "value": _frac(Fraction(1, args.m))}))
        return EXIT_OK
    records = []
    for N in lengths:
        row, values = closed_form.frequency_row(ctx, N)
        rec = {"N": N, "row": row, "values": [_frac(v) for v in sorted(values, reverse=True)]}
        if ctx.periodic:
            rec["periodic"] = True
        records.append(rec)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["N", "row", "values"])
        for rec in records:
            writer.writerow([rec["N"], rec["row"], " ".join(rec["values"])])
        out.write(buf.getvalue())
    elif len(records) == 1:
        out.write(_dump({"schema": SCHEMA, "b": args.b, "m": args.m, **records[0]}))
    else:
        out.write(_dump({"schema": SCHEMA, "b": args.b, "m": args.m, "rows": records}))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    _check_bm(args)
    if args.max_n < 0 or args.prefix < 1 or args.threads < 1:
        raise UsageError("--max-n must be non-negative, --prefix and --threads positive")
    report = verify_gtm(args.b, args.m, args.max_n, prefix_len=args.prefix,
                        tolerance=Fraction(args.tolerance), perturb=args.perturb,
                        threads=args.threads)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["N", "row", "values", "empirical_error", "ok"])
        for c in report.checks:
            writer.writerow([c.N, c.row, " ".join(_frac(v) for v in sorted(c.closed, reverse=True)),
                             "" if c.empirical_error is None else f"{float(c.empirical_error):.3e}",
                             int(c.ok)])
        out.write(buf.getvalue())
    else:
        out.write(_dump({
            "schema": SCHEMA, "b": args.b, "m": args.m, "maxN": args.max_n,
            "prefix": args.prefix, "tolerance": str(report.tolerance),
            "ok": report.ok, "firstMismatch": report.first_problem,
            "maxEmpiricalError": float(report.max_empirical_error),
            "checks": [c.as_dict() for c in report.checks] if args.details else len(report.checks),
        }))
    if not report.ok:
        print(f"mismatch at {report.first_problem}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _frid(b: int, m: int) -> FridContext:
    return gtm_context(b, m)


def cmd_rauzy(args, out) -> int:
    _check_bm(args)
    if args.n < 1:
        raise UsageError(f"-n must be at least 1, got {args.n}")
    ctx = _frid(args.b, args.m)
    idx = build_index(ctx.morphism, 0, args.n + 1)
    g = rz.rauzy(idx, ctx.frequency, args.n)
    if args.reduced:
        try:
            g = rz.reduce(g)
        except rz.PeriodicGraphError as exc:
            raise UsageError(f"t_{{{args.b},{args.m}}} is periodic: {exc}") from exc
    out.write(rz.export_json(g) if args.json else rz.export_dot(g))
    return EXIT_OK


def cmd_bound(args, out) -> int:
    _check_bm(args)
    if args.n < 1:
        raise UsageError(f"-n must be at least 1, got {args.n}")
    if closed_form.context(args.b, args.m).periodic:
        raise UsageError(f"t_{{{args.b},{args.m}}} is periodic; the bound needs an aperiodic word")
    ctx = _frid(args.b, args.m)
    idx = build_index(ctx.morphism, 0, args.n + 2)
    report = symmetry.upper_bound_report(idx, ctx.frequency, symmetry.dihedral_group(args.m), args.n)
    out.write(_dump({"schema": SCHEMA, "b": args.b, "m": args.m, **report.as_dict()}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="substfreq",
        description="Exact factor frequencies of generalized Thue-Morse words.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def bm(p):
        p.add_argument("-b", type=int, required=True, help="image length (b >= 2)")
        p.add_argument("-m", type=int, required=True, help="alphabet size (m >= 1)")

    p = sub.add_parser("freq-set", help="closed-form frequency sets of factors of length N+1")
    bm(p)
    p.add_argument("-N", type=int)
    p.add_argument("--range", type=int, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_freq_set)

    p = sub.add_parser("verify", help="closed form vs. decomposition vs. counting")
    bm(p)
    p.add_argument("--max-n", type=int, default=64)
    p.add_argument("--prefix", type=int, default=DEFAULT_PREFIX)
    p.add_argument("--tolerance", default="1/1000", help="empirical tolerance, e.g. 1/1000")
    p.add_argument("--perturb", action="store_true", help="inject a fault to test the mismatch path")
    p.add_argument("--threads", type=int, default=1, help="count windows in k overlapping chunks")
    p.add_argument("--details", action="store_true", help="include every per-N check in the JSON")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rauzy", help="Rauzy graph of order n as DOT or JSON")
    bm(p)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--reduced", action="store_true")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--dot", action="store_true", help="DOT output (default)")
    fmt.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_rauzy)

    p = sub.add_parser("bound", help="symmetry upper bound on the number of frequencies")
    bm(p)
    p.add_argument("-n", type=int, required=True)
    p.set_defaults(func=cmd_bound)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        if getattr(args, "tolerance", None) is not None:
            try:
                Fraction(args.tolerance)
            except (ValueError, ZeroDivisionError):
                raise UsageError(f"invalid tolerance {args.tolerance!r}") from None
        return args.func(args, out)
    except UsageError as exc:
        print(f"substfreq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
