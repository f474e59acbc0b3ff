"""Command line entry point: ``dsgenus bound`` and ``dsgenus cg-table``."""

from __future__ import annotations

import argparse
import logging
import sys

from . import casson_gordon
from .abelian import DEFAULT_HOM_CAP
from .casson_gordon import LensSpace, cg_table, format_table
from .dsl import ParseError, parse_knot
from .report import build_report, dumps
from .theta.pairs import DEFAULT_MAX_PAIRS, Caps

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INCOMPLETE = 2

log = logging.getLogger("dsgenus")


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _non_negative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dsgenus",
                                     description="Lower bounds for the double slice genus of knots.")
    parser.add_argument("--cache-dir", help="directory for cached signature tables "
                        f"(default: ${casson_gordon.CACHE_ENV})")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", help="report genus bounds for a knot")
    b.add_argument("knot", help='e.g. "2b(9/4)^2" or "seifert([[-1,1],[0,-1]])"')
    b.add_argument("--max-pairs", type=_positive, default=DEFAULT_MAX_PAIRS,
                   help="cap on candidate pairs")
    b.add_argument("--max-homs", type=_positive, default=DEFAULT_HOM_CAP,
                   help="cap on enumeration work (subgroups, homomorphisms)")
    b.add_argument("--max-n", type=_non_negative, default=2,
                   help="largest n1+n2 tried by the certificate search (with --verbose)")
    b.add_argument("--entry-bound", type=_positive, default=None,
                   help="truncate lattice entries in the certificate search")
    b.add_argument("--threads", type=_positive, default=1, help="worker processes")
    b.add_argument("--cache-dir", dest="bound_cache_dir", help=argparse.SUPPRESS)
    b.add_argument("--ribbon", action="store_true", help="assert that the knot is ribbon")
    b.add_argument("--verbose", action="store_true", help="include the per-pair table")

    t = sub.add_parser("cg-table", help="print sigma(L(p,q), chi_a) for characters into Z_d")
    t.add_argument("p", type=int)
    t.add_argument("q", type=int)
    t.add_argument("d", type=int)
    t.add_argument("--cache-dir", dest="table_cache_dir", help=argparse.SUPPRESS)
    return parser


def run_bound(args) -> int:
    try:
        K = parse_knot(args.knot, ribbon=args.ribbon)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    caps = Caps(max_pairs=args.max_pairs, max_homs=args.max_homs, max_n=args.max_n,
                entry_bound=args.entry_bound, threads=args.threads)
    report = build_report(K, caps, verbose=args.verbose)
    sys.stdout.write(dumps(report) + "\n")
    if report["status"] != "complete":
        print(f"warning: search caps reached ({report['theta_lower'].get('caps_hit')}); "
              "theta_lower is not a valid bound", file=sys.stderr)
        return EXIT_INCOMPLETE
    return EXIT_OK


def run_cg_table(args) -> int:
    try:
        L = LensSpace(args.p, args.q)
        rows = cg_table(L, args.d)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(format_table(rows))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; that code is reserved for incomplete results
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    cache = args.cache_dir or getattr(args, "bound_cache_dir", None) \
        or getattr(args, "table_cache_dir", None)
    if cache:
        casson_gordon.set_cache_dir(cache)
    if args.command == "bound":
        return run_bound(args)
    return run_cg_table(args)


if __name__ == "__main__":
    sys.exit(main())
