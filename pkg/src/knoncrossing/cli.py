"""Command line front end.

Exit status: 0 on success, 1 on a usage error (including asking for an empty
class), 2 when verification fails.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time

from . import counting as C
from .cache import cached_tables
from .errors import EmptyClass, KncError
from .formats import format_arcs, format_brackets
from .oracle import MATCHING, PARTIAL, STRUCTURE, DiagramClass
from .sampler import sample_many, tally

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2
TABLE_OF = {PARTIAL: C.STAR, MATCHING: C.OSCILLATING, STRUCTURE: C.NO_ONE_ARC}
DEFAULT_MAX_N = 2000
MAX_K = 6

log = logging.getLogger("knoncrossing")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, required=True, help="crossing bound (2..6)")
    p.add_argument("--n", type=int, required=True, help="number of vertices")
    p.add_argument("--class", dest="cls", choices=list(TABLE_OF), default=PARTIAL)
    p.add_argument("--cache", metavar="DIR", help="directory for cached count tables")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N,
                   help=f"refuse larger n (table memory guard, default {DEFAULT_MAX_N})")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="knoncrossing",
                     description="Count and uniformly sample k-noncrossing matchings and structures.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", help="print the exact number of objects")
    _add_common(p)

    p = sub.add_parser("sample", help="draw uniform random objects")
    _add_common(p)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["arcs", "brackets"], default="arcs")
    p.add_argument("--verify", action="store_true", help="check each sample before printing it")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("hist", help="multiplicity histogram of N samples (tab separated)")
    _add_common(p)
    p.add_argument("--count", type=int, required=True, help="number of samples N")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("selftest", help="run the cross-check suites")
    p.add_argument("--cache", metavar="DIR", help="also verify every table cached in DIR")
    return parser


def _check_range(args) -> None:
    if not 2 <= args.k <= MAX_K:
        raise UsageError(f"--k must be in 2..{MAX_K}")
    if not 0 <= args.n <= args.max_n:
        raise UsageError(f"--n must be in 0..{args.max_n} (raise --max-n to go further)")
    if getattr(args, "count", 1) < 0:
        raise UsageError("--count must be nonnegative")
    if getattr(args, "jobs", 1) < 1:
        raise UsageError("--jobs must be positive")


def cmd_count(args, out) -> int:
    if args.cache:
        total = cached_tables(args.cache, args.k, args.n, TABLE_OF[args.cls]).total
    else:
        total = C.count(args.k, args.n, TABLE_OF[args.cls])
    out.write(f"{total}\n")
    return EXIT_OK


def _samples(args):
    t0 = time.perf_counter()
    table = cached_tables(args.cache, args.k, args.n, TABLE_OF[args.cls])
    log.info("table ready in %.2fs (%d entries)", time.perf_counter() - t0, table.n_entries())
    if table.total == 0:
        raise EmptyClass(f"there are no {args.cls} objects on {args.n} vertices")
    return table, sample_many(table, args.count, args.seed, args.jobs)


def cmd_sample(args, out) -> int:
    _, objs = _samples(args)
    dclass = DiagramClass(args.cls, args.k)
    for ordinal, m in enumerate(objs):
        if args.verify and not dclass.contains(m):
            log.error("sample %d failed verification: %s", ordinal, format_arcs(m))
            return EXIT_VERIFY
        line = None
        if args.format == "brackets":
            line = format_brackets(m)
            if line is None:
                log.warning("sample %d needs more than 4 bracket types; writing arc list", ordinal)
        out.write((line if line is not None else format_arcs(m)) + "\n")
    return EXIT_OK


def cmd_hist(args, out) -> int:
    # scipy is only needed here; keep it off the count/sample startup path
    from .report import MAX_CLASSES, histogram_from_counts

    table = cached_tables(args.cache, args.k, args.n, TABLE_OF[args.cls])
    if table.total > MAX_CLASSES:
        raise UsageError(f"{table.total} classes is too many to tabulate (limit {MAX_CLASSES})")
    if args.count < 1:
        raise UsageError("--count must be positive")
    rep = histogram_from_counts(tally(table, args.count, args.seed, args.jobs), table.total)
    rep.write_tsv(out, header=f"k={args.k} n={args.n} class={args.cls} seed={args.seed}")
    return EXIT_OK


def cmd_selftest(args, out) -> int:
    from .selftest import run

    results = run(args.cache)
    for name, ok, detail in results:
        out.write(f"{'PASS' if ok else 'FAIL'}\t{name}\t{detail}\n")
    failed = sum(not ok for _, ok, _ in results)
    out.write(f"{len(results) - failed}/{len(results)} suites passed\n")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


COMMANDS = {"count": cmd_count, "sample": cmd_sample, "hist": cmd_hist, "selftest": cmd_selftest}


def main(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        if args.command != "selftest":
            _check_range(args)
        return COMMANDS[args.command](args, out)
    except (UsageError, KncError) as exc:
        print(f"knoncrossing: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
