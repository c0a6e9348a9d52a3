"""Command line: ``gammakit poly | table | verify``.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 enumeration bound exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import List, Optional

from . import families as fam
from . import permstats as ps
from .exactalg import render
from .identities import SUITES
from .verify import SCHEMA_VERSION, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3

TABLES = ("gamma", "b_of_p", "f_plus_minus", "W", "S", "Q", "P", "Pstar")


def table_rows(name: str, n_max: int) -> List[dict]:
    """Rows {n, i, j, value} with the value as canonical polynomial text.

    f_plus_minus uses i = 0 for f+ and i = 1 for f-; the two-index triangles
    (W, S, Q, Pstar) leave j as None; P(n, r, s) puts r in i and s in j.
    """
    rows = []
    if name in fam.GAMMA_TABLES:
        tab = fam.gamma_table(name, n_max)
        for (n, i, j), val in sorted(tab.entries.items()):
            rows.append({"n": n, "i": i, "j": j, "value": render(val)})
        return rows
    tri = ps.TRIANGLES[name](n_max)
    for key, val in sorted(tri.entries.items()):
        if len(key) == 2:
            rows.append({"n": key[0], "i": key[1], "j": None, "value": str(val)})
        else:
            rows.append({"n": key[0], "i": key[1], "j": key[2], "value": str(val)})
    return rows


def _format_table(name: str, rows: List[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"schema_version": SCHEMA_VERSION, "name": name, "entries": rows}, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "i", "j", "value"])
    for r in rows:
        writer.writerow([r["n"], r["i"], "" if r["j"] is None else r["j"], r["value"]])
    return buf.getvalue()


def _nonneg(text: str) -> int:
    try:
        val = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if val < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return val


def _positive(text: str) -> int:
    val = _nonneg(text)
    if val == 0:
        raise argparse.ArgumentTypeError("must be >= 1")
    return val


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gammakit", description="Exact gamma-positivity toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    pp = sub.add_parser("poly", help="print one polynomial in canonical form")
    pp.add_argument("--family", required=True, choices=sorted(fam.FAMILIES), metavar="FAMILY",
                    help="one of: " + ", ".join(sorted(fam.FAMILIES)))
    pp.add_argument("--n", required=True, type=_nonneg)
    pp.add_argument("--r", type=_positive, help="number of colors (d_xr only)")
    pp.add_argument("--oracle", action="store_true", help="compute by brute-force enumeration instead")
    pp.add_argument("--bound-override", action="store_true", help="lift the enumeration cap")

    pt = sub.add_parser("table", help="export a gamma table or a statistic triangle")
    pt.add_argument("--table", required=True, choices=TABLES)
    pt.add_argument("--max-n", required=True, type=_nonneg)
    pt.add_argument("--format", default="json", choices=("json", "csv"))
    pt.add_argument("--output", help="write to this file instead of standard output")
    pt.add_argument("--bound-override", action="store_true", help="lift the enumeration cap")

    pv = sub.add_parser("verify", help="run verification suites")
    pv.add_argument("--suite", default="all", choices=("all",) + SUITES)
    pv.add_argument("--max-n", type=_nonneg, default=6)
    pv.add_argument("--json", action="store_true", help="emit the report as JSON")
    pv.add_argument("--threads", type=_positive, default=1)
    pv.add_argument("--bound-override", action="store_true",
                    help="use --max-n for every check and lift the enumeration cap")
    pv.add_argument("--timings", action="store_true", help="include wall times (output no longer reproducible)")
    return parser


def cmd_poly(args) -> int:
    entry = fam.FAMILIES[args.family]
    params = {}
    if entry.params:
        if args.r is None:
            print(f"gammakit: family {args.family} needs --r", file=sys.stderr)
            return EXIT_USAGE
        params["r"] = args.r
    elif args.r is not None:
        print(f"gammakit: family {args.family} takes no --r", file=sys.stderr)
        return EXIT_USAGE
    fn = fam.oracle if args.oracle else fam.family
    with ps.bound_override(None if args.bound_override else ps.max_elements()):
        poly = fn(args.family, args.n, **params)
    print(render(poly))
    return EXIT_OK


def cmd_table(args) -> int:
    with ps.bound_override(None if args.bound_override else ps.max_elements()):
        rows = table_rows(args.table, args.max_n)
    text = _format_table(args.table, rows, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_suite(args.suite, args.max_n, threads=args.threads, bound_override=args.bound_override)
    if args.json:
        print(report.to_json(args.timings))
    else:
        print(report.to_text(args.timings))
    return report.exit_code()


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    handler = {"poly": cmd_poly, "table": cmd_table, "verify": cmd_verify}[args.command]
    try:
        return handler(args)
    except ps.BoundExceeded as exc:
        print(f"gammakit: {exc}", file=sys.stderr)
        return EXIT_BOUND


if __name__ == "__main__":
    sys.exit(main())
