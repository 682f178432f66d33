"""Command-line interface: scan, check-hf, check-ideal."""

from __future__ import annotations

import argparse
import sys

from .errors import IdealParseError, NeedsCapError, NotAdmissibleError
from .scanner import check_hf, check_ideal, scan
from .verdict import DEFAULT_DFS_CAP, DEFAULT_FILTERS


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="multbound",
        description="Multiplicity bound verification for Artinian Hilbert functions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    scan_p = sub.add_parser("scan", help="classify every Hilbert function in a family")
    scan_p.add_argument("--vars", type=int, required=True, help="number of variables")
    scan_p.add_argument("--socle-max", type=int, required=True, help="largest socle degree")
    scan_p.add_argument("--prefix", default="1", help="comma-separated fixed leading values")
    scan_p.add_argument(
        "--filters",
        default=",".join(DEFAULT_FILTERS),
        help="comma-separated filter names (er,gen,aci,growth)",
    )
    scan_p.add_argument("--dfs-cap", type=int, default=DEFAULT_DFS_CAP,
                        help="node budget per Hilbert function")
    scan_p.add_argument("--checkpoint", help="checkpoint file; resumes when present")
    scan_p.add_argument("--checkpoint-interval", type=int, default=10_000,
                        help="functions between checkpoint writes")
    scan_p.add_argument("--out", help="report file path")
    scan_p.add_argument("--format", choices=["json", "csv"], default="json",
                        help="report file format")
    scan_p.add_argument("--jobs", type=int, default=None,
                        help="worker processes (default: all cores)")
    scan_p.add_argument("--chunk-size", type=int, default=512,
                        help="Hilbert functions per work unit")
    scan_p.add_argument("--limit", type=int, default=None,
                        help="stop after this many functions (leaves an INCOMPLETE report)")

    hf_p = sub.add_parser("check-hf", help="classify a single Hilbert function")
    hf_p.add_argument("sequence", help="comma-separated values, e.g. 1,3,6,7,3,1")
    hf_p.add_argument("--vars", type=int, default=None,
                      help="number of variables (default: H(1))")
    hf_p.add_argument("--filters", default=",".join(DEFAULT_FILTERS))
    hf_p.add_argument("--dfs-cap", type=int, default=DEFAULT_DFS_CAP)

    id_p = sub.add_parser("check-ideal", help="analyze a monomial ideal")
    id_p.add_argument("ideal", help="generators, e.g. 'a^3; b^4; c^4; a*b^2'")
    id_p.add_argument("--vars", type=int, default=None,
                      help="number of variables (default: inferred)")
    id_p.add_argument("--truncate", type=int, default=None,
                      help="also report the truncation at this degree")
    id_p.add_argument("--char", type=int, default=32003, help="field characteristic")
    id_p.add_argument("--degree-cap", type=int, default=None,
                      help="degree bound for non-Artinian ideals")
    return parser


def _run_scan(args):
    prefix = tuple(int(v) for v in args.prefix.replace(",", " ").split())
    filters = tuple(t for t in args.filters.replace(",", " ").split() if t)
    report = scan(
        args.vars,
        args.socle_max,
        prefix,
        filters=filters,
        dfs_cap=args.dfs_cap,
        jobs=args.jobs,
        chunk_size=args.chunk_size,
        checkpoint_path=args.checkpoint,
        checkpoint_interval=args.checkpoint_interval,
        out_path=args.out,
        out_format=args.format,
        limit=args.limit,
    )
    sys.stdout.write(report.summary())
    if report.status != "COMPLETE":
        return 1
    return 2 if report.counts["unresolved"] else 0


def _run_check_hf(args):
    filters = tuple(t for t in args.filters.replace(",", " ").split() if t)
    _, text, code = check_hf(args.sequence, n=args.vars, filters=filters, dfs_cap=args.dfs_cap)
    sys.stdout.write(text)
    return code


def _run_check_ideal(args):
    _, text, code = check_ideal(
        args.ideal,
        n=args.vars,
        truncate_at=args.truncate,
        field_char=args.char,
        degree_cap=args.degree_cap,
    )
    sys.stdout.write(text)
    return code


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "scan":
            return _run_scan(args)
        if args.command == "check-hf":
            return _run_check_hf(args)
        return _run_check_ideal(args)
    except (IdealParseError, NeedsCapError, NotAdmissibleError, ValueError, OSError) as err:
        sys.stderr.write(f"error: {err}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
