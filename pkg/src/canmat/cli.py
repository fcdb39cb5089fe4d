"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage, 3 capacity, 4 I/O.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .bitcore import CapacityError, DomainError, decode, format_tuple
from .canonical import ORACLE_N_MAX
from .enumeration import count_canonical, count_lambda, list_canonical, sequence
from .fibtheorem import RECURRENCE_K_MAX, render_rows, rows_to_json, verify_recurrence
from .oracle import compare, orbit_partition

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_IO = 4

FIB_ORBIT_K_MAX = 4


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _natural(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_positive, default=os.cpu_count() or 1,
                        help="worker processes (default: machine parallelism)")
    common.add_argument("--limit-override", action="store_true",
                        help="allow orders beyond the desk-scale guards")
    common.add_argument("--quiet", action="store_true", help="suppress notes on stderr")

    parser = argparse.ArgumentParser(
        prog="canmat",
        description="Canonical n x n binary matrices with k ones in every row and column.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="print C(n,k), lambda(n,k) or O(n,k)")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_natural, required=True)
    p.add_argument("--method", choices=["canonical", "lambda", "orbit"], default="canonical")

    p = sub.add_parser("list", parents=[common], help="stream canonical elements")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_natural, required=True)
    p.add_argument("--format", choices=["tuple", "matrix", "json"], default="tuple")

    p = sub.add_parser("sequence", parents=[common], help="table of C(n,k) for n = k..n-max")
    p.add_argument("--k", type=_natural, required=True)
    p.add_argument("--n-max", type=_positive, required=True)
    p.add_argument("--bfile", metavar="PATH", help="also write a b-file of 'n C(n,k)' lines")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--orbits", action="store_true", help=f"add oracle orbit counts for n <= {ORACLE_N_MAX}")
    p.add_argument("--timings", action="store_true", help="include elapsed time per row")

    p = sub.add_parser("fib", parents=[common], help="check C(k+2,k) = f_k and the case split")
    p.add_argument("--k-max", type=_natural, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--orbits", action="store_true",
                   help=f"also report oracle orbit counts O(k+2,k) for k <= {FIB_ORBIT_K_MAX}")

    p = sub.add_parser("compare", parents=[common], help="canonical count vs oracle orbit count")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_natural, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    return parser


def _note(args, message: str) -> None:
    if not args.quiet:
        print(message, file=sys.stderr)


def _cmd_count(args, out) -> int:
    if args.method == "canonical":
        value = count_canonical(args.n, args.k, args.threads, override=args.limit_override)
    elif args.method == "lambda":
        value = count_lambda(args.n, args.k)
    else:
        value = len(orbit_partition(args.n, args.k, override=args.limit_override).classes)
    out.write(f"{value}\n")
    return EXIT_OK


def _cmd_list(args, out) -> int:
    stream = list_canonical(args.n, args.k, args.threads, override=args.limit_override)
    if args.format == "json":
        out.write(json.dumps([list(t) for t in stream]) + "\n")
    elif args.format == "matrix":
        for i, t in enumerate(stream):
            if i:
                out.write("\n")
            out.write(decode(t).render() + "\n")
    else:
        for t in stream:
            out.write(format_tuple(t) + "\n")
    return EXIT_OK


def _cmd_sequence(args, out) -> int:
    table = sequence(args.k, args.n_max, args.threads, orbits=args.orbits, override=args.limit_override)
    if args.format == "json":
        out.write(table.to_json(timings=args.timings) + "\n")
    else:
        out.write(table.render(timings=args.timings) + "\n")
    if args.bfile:
        try:
            with open(args.bfile, "w", encoding="ascii") as fh:
                fh.write(table.bfile())
        except OSError as exc:
            print(f"canmat: cannot write b-file: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK


def _cmd_fib(args, out) -> int:
    if args.k_max > RECURRENCE_K_MAX:
        raise CapacityError(f"--k-max limited to {RECURRENCE_K_MAX}", RECURRENCE_K_MAX)
    rows = verify_recurrence(args.k_max, args.threads)
    if args.format == "json":
        out.write(rows_to_json(rows) + "\n")
    else:
        out.write(render_rows(rows) + "\n")
        if args.orbits:
            # reported only; the canonical recurrence says nothing about orbit counts
            for k in range(min(args.k_max, FIB_ORBIT_K_MAX) + 1):
                o = len(orbit_partition(k + 2, k).classes)
                out.write(f"orbits k={k}: O({k + 2},{k})={o}\n")
    return EXIT_OK if all(r.passed for r in rows) else EXIT_FAIL


def _cmd_compare(args, out) -> int:
    report = compare(args.n, args.k, args.threads, override=args.limit_override)
    out.write((report.to_json() if args.format == "json" else report.render()) + "\n")
    for problem in report.problems():
        _note(args, f"inconsistent report: {problem}")
    return EXIT_OK


COMMANDS = {
    "count": _cmd_count,
    "list": _cmd_list,
    "sequence": _cmd_sequence,
    "fib": _cmd_fib,
    "compare": _cmd_compare,
}


def main(argv: list[str] | None = None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = out or sys.stdout
    if args.limit_override:
        _note(args, "warning: desk-scale limits disabled; runs may take very long")
    try:
        return COMMANDS[args.command](args, out)
    except CapacityError as exc:
        print(f"canmat: capacity limit: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except DomainError as exc:
        print(f"canmat: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_IO


def main_entry() -> None:
    sys.exit(main())
