"""
Command-line interface.

Exit codes: 0 success, 1 verification mismatch, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .braid import BraidError, MoveError, apply_move_script, format_braid, parse_braid, parse_move_script
from .classify import (
    SurveyRow, default_workers, summarize, survey, verify_family,
)
from .invariants import NotAKnot, invariant_set
from .invariants.core import DEFAULT_JONES_CEILING
from .ttk import CATALOG, Family, InvalidParameters, TTKParams, export_catalog, ttk_braid

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2
ALL_FAMILIES = tuple(f.ident for f in CATALOG)


class UsageError(Exception):
    pass


def _params(args) -> TTKParams:
    try:
        return TTKParams(args.p, args.q, args.r, args.s)
    except InvalidParameters as exc:
        raise UsageError(f"invalid parameters: {exc}") from None


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def load_catalog(path: str | None):
    """The built-in catalog, or one read from a JSON file in the ``catalog`` export format."""
    if path is None:
        return CATALOG
    with open(path) as fh:
        try:
            records = json.load(fh)
        except json.JSONDecodeError as exc:
            raise UsageError(f"catalog file {path} is not valid JSON: {exc}") from None
    try:
        return tuple(
            Family(rec["id"], tuple(rec["variables"]), rec["p"], rec["q"], rec["r"], rec["s"],
                   rec["a"], rec["b"], tuple(rec.get("conditions", ())))
            for rec in records
        )
    except (KeyError, TypeError, ValueError, SyntaxError) as exc:
        raise UsageError(f"malformed catalog file {path}: {exc}") from None


# -- subcommands --------------------------------------------------------------------

def cmd_braid(args) -> int:
    print(format_braid(ttk_braid(_params(args))))
    return EXIT_OK


def cmd_invariants(args) -> int:
    params = _params(args)
    inv = invariant_set(ttk_braid(params), want_jones=not args.no_jones,
                        ceiling=args.jones_ceiling)
    record = {"p": params.p, "q": params.q, "r": params.r, "s": params.s, **inv.to_dict()}
    if args.json:
        print(json.dumps(record))
    else:
        for key, value in record.items():
            print(f"{key}: {value}")
    return EXIT_OK


def cmd_verify(args) -> int:
    families = list(ALL_FAMILIES) if args.all else args.families
    if not families:
        raise UsageError("name at least one family or pass --all")
    catalog = load_catalog(args.catalog)
    known = {f.ident for f in catalog}
    for fam in families:
        if fam not in known:
            raise UsageError(f"unknown family {fam!r}; known: {', '.join(sorted(known))}")
    ok = True
    for fam in families:
        report = verify_family(fam, args.m_max, args.n_max, args.jones_ceiling,
                               p_max=args.p_max, catalog=catalog, workers=args.workers)
        for res in report.results:
            if args.format == "json-lines":
                print(json.dumps({"family": fam, **res.to_dict()}))
            elif res.status == "skipped":
                print(f"skipped: {res.label}: {res.detail}")
            else:
                print(res.line())
        if args.format != "json-lines":
            print(f"# {report.summary()}")
        ok &= report.ok
        sys.stdout.flush()
    return EXIT_OK if ok else EXIT_MISMATCH


def _write_row(writer, fmt: str, out, row: SurveyRow) -> None:
    if fmt == "csv":
        writer.writerow(row.csv_fields())
    elif fmt == "json-lines":
        out.write(json.dumps(row.to_dict()) + "\n")
    else:
        out.write(" ".join(str(x) for x in row.csv_fields()) + "\n")
    out.flush()


def cmd_survey(args) -> int:
    if args.p_max < 3:
        raise UsageError("--p-max must be at least 3")
    catalog = load_catalog(args.catalog)
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        writer = csv.writer(out, lineterminator="\n")
        if args.format == "csv":
            writer.writerow(SurveyRow.CSV_HEADER)
        rows = []
        for row in survey(args.p_max, args.jones_ceiling, args.jones_policy, catalog,
                          workers=args.workers):
            rows.append(row)
            _write_row(writer, args.format, out, row)
    finally:
        if out is not sys.stdout:
            out.close()
    counts = summarize(rows)
    unexplained = [r for r in rows if r.status == "Unexplained"]
    summary = sys.stderr if args.output is None else sys.stdout
    print(f"# survey p <= {args.p_max}: {len(rows)} rows, "
          + ", ".join(f"{k} {v}" for k, v in counts.items()), file=summary)
    for row in unexplained:
        print(f"# unexplained: {row.params} {row.identification}", file=summary)
    return EXIT_OK


def cmd_moves(args) -> int:
    with open(args.braid_file) as fh:
        word = parse_braid(fh.read())
    with open(args.script_file) as fh:
        script = parse_move_script(fh.read())
    try:
        result = apply_move_script(word, script)
    except MoveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(format_braid(result))
    if args.check:
        try:
            before = invariant_set(word, ceiling=args.jones_ceiling)
            after = invariant_set(result, ceiling=args.jones_ceiling)
        except NotAKnot:
            print("invariants preserved: not checked (closure is not a knot)")
            return EXIT_OK
        same = before == after
        print(f"invariants preserved: {'yes' if same else 'no'}")
        return EXIT_OK if same else EXIT_MISMATCH
    return EXIT_OK


def cmd_catalog(args) -> int:
    print(json.dumps(export_catalog(), indent=2))
    return EXIT_OK


# -- parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ttknots",
        description="Twisted torus knots: braid words, exact invariants, family checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_params(p):
        for name in ("p", "q", "r", "s"):
            p.add_argument(name, type=int)

    def add_ceiling(p):
        p.add_argument("--jones-ceiling", type=_positive, default=DEFAULT_JONES_CEILING,
                       help="largest strand count for Jones (default %(default)s)")

    def add_workers(p):
        p.add_argument("--workers", type=_positive, default=default_workers(),
                       help="worker processes (default from TTKNOTS_WORKERS, else 1)")

    p = sub.add_parser("braid", help="print the braid word of T(p,q,r,s)")
    add_params(p)
    p.set_defaults(func=cmd_braid)

    p = sub.add_parser("invariants", help="Alexander, Jones and determinant of T(p,q,r,s)")
    add_params(p)
    add_ceiling(p)
    p.add_argument("--json", action="store_true", help="one JSON line")
    p.add_argument("--no-jones", action="store_true", help="skip the Jones polynomial")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("verify", help="check catalog families against closed forms")
    p.add_argument("families", nargs="*", help=f"family ids: {' '.join(ALL_FAMILIES)}")
    p.add_argument("--all", action="store_true", help="every catalog family")
    p.add_argument("--m-max", type=_positive, default=4)
    p.add_argument("--n-max", type=_positive, default=4)
    p.add_argument("--p-max", type=_positive, default=None, help="skip instances with larger p")
    p.add_argument("--format", choices=("text", "json-lines"), default="text")
    p.add_argument("--catalog", help="JSON catalog file replacing the built-in one")
    add_ceiling(p)
    add_workers(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("survey", help="classify every T(p,q,r,-1) with 2 <= r <= p <= P")
    p.add_argument("--p-max", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json-lines", "text"), default="csv")
    p.add_argument("--output", "-o", help="write rows here instead of stdout")
    p.add_argument("--jones-policy", choices=("candidates", "all"), default="candidates",
                   help="compute Jones only for Alexander torus candidates, or for all rows")
    p.add_argument("--catalog", help="JSON catalog file replacing the built-in one")
    add_ceiling(p)
    add_workers(p)
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("moves", help="replay a move script on a braid word")
    p.add_argument("braid_file")
    p.add_argument("script_file")
    p.add_argument("--check", action="store_true", help="compare invariants before and after")
    add_ceiling(p)
    p.set_defaults(func=cmd_moves)

    p = sub.add_parser("catalog", help="print the family catalog as JSON")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, BraidError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
