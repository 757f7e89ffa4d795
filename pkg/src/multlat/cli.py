"""Command-line surface: counting tables, verification campaigns, exports.

Every subcommand writes data rows to stdout and everything else (progress,
wall-time footers, counterexamples, warnings) to stderr, so captured stdout
is byte-stable across --jobs settings and across cold/warm cache runs.
Exit codes: 0 success, 1 verification failure, 2 budget or usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

from .cache import CountCache
from .enumeration import (
    ENGINE_VERSION,
    CountRecord,
    SearchBudgetExceeded,
    count_corank_formula,
    count_full_rank,
    count_unital,
    enumerate_corank_oracle,
    find_counterexample,
    verify_corank_factorization,
)
from .partitions import (
    enumerate_ordered_maps,
    map_to_partition,
    map_to_string,
    stirling2,
)


@dataclass(frozen=True)
class CampaignSpec:
    """One verification or counting campaign, fully pinned down."""

    n_values: tuple[int, ...]
    k_values: tuple[int, ...]
    r_values: tuple[int, ...]
    bound_multiplier: int = 1
    job_count: int = 1
    output_format: str = "table"
    cache_path: Optional[str] = None
    budget: Optional[int] = None

    def __post_init__(self) -> None:
        if not (self.n_values and self.k_values and self.r_values):
            raise ValueError("all ranges must be nonempty")
        if any(r < 1 for r in self.r_values):
            raise ValueError("r must be at least 1 throughout")
        if self.bound_multiplier < 1:
            raise ValueError("bound multiplier must be at least 1")
        if self.job_count < 1:
            raise ValueError("job count must be at least 1")
        if self.output_format not in ("table", "csv", "json"):
            raise ValueError(f"unknown format {self.output_format!r}")


def _parse_range(text: str) -> tuple[int, ...]:
    """'a..b' (inclusive) or a single integer."""
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected INT or LO..HI, got {text!r}") from None
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return tuple(range(lo, hi + 1))


def _emit_rows(fmt: str, header: Sequence[str], rows: Sequence[Sequence],
               stream: TextIO) -> None:
    if fmt == "table":
        cells = [["-" if c is None else str(c) for c in row] for row in rows]
        widths = [len(h) for h in header]
        for row in cells:
            for i, c in enumerate(row):
                widths[i] = max(widths[i], len(c))
        stream.write("  ".join(
            h.ljust(widths[i]) for i, h in enumerate(header)).rstrip() + "\n")
        for row in cells:
            stream.write("  ".join(
                c.ljust(widths[i]) for i, c in enumerate(row)).rstrip() + "\n")
    elif fmt == "csv":
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    else:
        for row in rows:
            stream.write(
                json.dumps(dict(zip(header, row)), sort_keys=True) + "\n")


class _StreamEmitter:
    """Row-at-a-time variant of _emit_rows for commands that stream.

    Table mode uses fixed column widths so earlier lines never need
    realigning.
    """

    def __init__(self, fmt: str, header: Sequence[str],
                 stream: TextIO) -> None:
        self.fmt = fmt
        self.header = tuple(header)
        self.stream = stream
        self.widths = [max(len(h), 5) for h in self.header]

    def start(self) -> None:
        if self.fmt == "table":
            self.stream.write("  ".join(
                h.ljust(self.widths[i])
                for i, h in enumerate(self.header)).rstrip() + "\n")
        elif self.fmt == "csv":
            csv.writer(self.stream, lineterminator="\n").writerow(self.header)
        self.stream.flush()

    def row(self, row: Sequence) -> None:
        if self.fmt == "table":
            cells = ["-" if c is None else str(c) for c in row]
            self.stream.write("  ".join(
                c.ljust(self.widths[i])
                for i, c in enumerate(cells)).rstrip() + "\n")
        elif self.fmt == "csv":
            csv.writer(self.stream, lineterminator="\n").writerow(row)
        else:
            self.stream.write(
                json.dumps(dict(zip(self.header, row)), sort_keys=True) + "\n")
        self.stream.flush()


_COUNT_HEADER = ("n", "k", "r", "method", "count", "status")


def _count_cells(cells, args, fmt: str) -> int:
    """Shared count/count-corank driver: cells yield (n, k, r, method, fn)."""
    cache = CountCache(args.cache) if args.cache else None
    rows = []
    incomplete = 0
    t0 = time.monotonic()
    for n, k, r, method, compute in cells:
        cached = cache.get(n, k, r, method) if cache else None
        if cached is not None:
            rows.append((n, k, r, method, cached, "ok"))
            continue
        try:
            value = compute()
        except SearchBudgetExceeded:
            incomplete += 1
            rows.append((n, k, r, method, None, "incomplete"))
            continue
        rows.append((n, k, r, method, value, "ok"))
        if cache is not None:
            cache.put(CountRecord(n, k, r, value, method, ENGINE_VERSION))
    _emit_rows(fmt, _COUNT_HEADER, rows, sys.stdout)
    print(f"{len(rows)} cells, {incomplete} incomplete, "
          f"{time.monotonic() - t0:.2f}s", file=sys.stderr)
    return 2 if incomplete else 0


def _cmd_count(args) -> int:
    fmt = args.format or "table"
    fn = count_full_rank if args.method == "oracle" else count_unital

    def cells():
        for n in args.n:
            for r in args.r:
                yield (n, 0, r, args.method,
                       lambda n=n, r=r: fn(n, r, jobs=args.jobs,
                                           budget=args.budget))

    return _count_cells(cells(), args, fmt)


def _cmd_count_corank(args) -> int:
    fmt = args.format or "table"
    ambient, k = args.ambient, args.corank
    if not 0 <= k <= ambient:
        raise ValueError("need 0 <= corank <= ambient")
    n = ambient - k

    def cells():
        for r in args.torsion:
            if k == 0:
                # co-rank 0 is plain full-rank counting whichever method was
                # asked for; recorded as 'oracle'
                yield (n, 0, r, "oracle",
                       lambda r=r: count_full_rank(n, r, jobs=args.jobs,
                                                   budget=args.budget))
            elif args.method == "formula":
                yield (n, k, r, "formula",
                       lambda r=r: count_corank_formula(n, k, r))
            else:
                yield (n, k, r, "oracle",
                       lambda r=r: len(enumerate_corank_oracle(
                           ambient, k, r, args.bound_multiplier,
                           jobs=args.jobs, budget=args.budget)))

    return _count_cells(cells(), args, fmt)


_VERIFY_HEADER = ("n", "k", "r", "oracle_count", "formula_count",
                  "stirling_factor", "full_rank_count", "witnesses_checked",
                  "status")


def _cmd_verify(args) -> int:
    fmt = args.format or "table"
    spec = CampaignSpec(tuple(args.n), tuple(args.k), tuple(args.r),
                        bound_multiplier=args.bound_multiplier,
                        job_count=args.jobs, output_format=fmt,
                        cache_path=args.cache, budget=args.budget)
    # verification never trusts the cache; it only deposits fresh oracle
    # counts for later count runs
    cache = CountCache(spec.cache_path) if spec.cache_path else None
    emitter = _StreamEmitter(fmt, _VERIFY_HEADER, sys.stdout)
    emitter.start()
    t0 = time.monotonic()
    cells = 0
    for n in spec.n_values:
        for k in spec.k_values:
            for r in spec.r_values:
                report = verify_corank_factorization(
                    n, k, r, spec.bound_multiplier, jobs=spec.job_count,
                    budget=spec.budget)
                cells += 1
                data = report.as_dict()
                emitter.row([data[h] for h in _VERIFY_HEADER])
                if cache is not None:
                    cache.put(CountRecord(n, k, r, report.oracle_count,
                                          "oracle", ENGINE_VERSION))
                if report.status != "pass":
                    found = find_counterexample(
                        n, k, r, spec.bound_multiplier, jobs=spec.job_count,
                        budget=spec.budget)
                    if found is not None:
                        lattice, reason = found
                        print("counterexample: "
                              + json.dumps(lattice.as_dict(), sort_keys=True),
                              file=sys.stderr)
                        print(f"reason: {reason}", file=sys.stderr)
                    print(f"{cells} cells, FAILED at n={n} k={k} r={r}, "
                          f"{time.monotonic() - t0:.2f}s", file=sys.stderr)
                    return 1
    print(f"{cells} cells, all passed, {time.monotonic() - t0:.2f}s",
          file=sys.stderr)
    return 0


def _cmd_partitions(args) -> int:
    fmt = args.format or "table"
    if args.n < 1 or args.k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    maps = list(enumerate_ordered_maps(args.n, args.n + args.k))
    if args.as_maps:
        header = ("index", "map")
        rows = [(i, map_to_string(g)) for i, g in enumerate(maps)]
    else:
        header = ("index", "partition")
        rows = [
            (i, "".join(
                "{" + ",".join(str(e) for e in block) + "}"
                for block in map_to_partition(g).blocks))
            for i, g in enumerate(maps)
        ]
    _emit_rows(fmt, header, rows, sys.stdout)
    expected = stirling2(args.n + args.k + 1, args.n + 1)
    print(f"{len(rows)} rows, Stirling value {expected}", file=sys.stderr)
    if len(rows) != expected:
        print("partition count disagrees with the Stirling number",
              file=sys.stderr)
        return 1
    return 0


def _cmd_series(args) -> int:
    fmt = args.format or "csv"
    if args.n < 1:
        raise ValueError("need n >= 1")
    if args.n > args.max_n:
        raise ValueError(
            f"n {args.n} exceeds the configured maximum {args.max_n}")
    if args.r_max < 1:
        raise ValueError("need r-max >= 1")
    fn = count_unital if args.family == "unital" else count_full_rank
    rows = []
    running = 0
    truncated = False
    t0 = time.monotonic()
    for r in range(1, args.r_max + 1):
        try:
            value = fn(args.n, r, jobs=args.jobs, budget=args.budget)
        except SearchBudgetExceeded:
            truncated = True
            break
        running += value
        rows.append((r, value, running))
    stream = (open(args.out, "w", encoding="utf-8", newline="")
              if args.out else sys.stdout)
    try:
        _emit_rows(fmt, ("r", "f", "N"), rows, stream)
        if truncated:
            if fmt == "json":
                stream.write(json.dumps({"truncated": True}) + "\n")
            else:
                stream.write("# truncated\n")
    finally:
        if args.out:
            stream.close()
    where = args.out if args.out else "stdout"
    print(f"{len(rows)} of {args.r_max} coefficients to {where}, "
          f"{time.monotonic() - t0:.2f}s", file=sys.stderr)
    return 2 if truncated else 0


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--cache", metavar="PATH", default=None,
                        help="JSON-lines count cache file")
    shared.add_argument("--jobs", type=int, default=1, metavar="N",
                        help="worker processes for enumeration (default 1)")
    shared.add_argument("--format", choices=("table", "csv", "json"),
                        default=None,
                        help="output format (default: table; series: csv)")
    shared.add_argument("--bound-multiplier", type=int, default=1, metavar="M",
                        help="widen the oracle entry bound by this factor")
    shared.add_argument("--budget", type=int, default=None, metavar="STEPS",
                        help="candidate-rows budget per worker")

    parser = argparse.ArgumentParser(
        prog="multlat",
        description="Count multiplicative sublattices of Z^n and verify the "
                    "co-rank factorization against a brute-force census.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[shared],
                       help="full-rank counts by rank and index")
    p.add_argument("--n", type=_parse_range, required=True, metavar="RANGE")
    p.add_argument("--r", type=_parse_range, required=True, metavar="RANGE")
    p.add_argument("--method", choices=("oracle", "unital"),
                   default="oracle",
                   help="oracle: all multiplicative sublattices; unital: "
                        "only those containing the all-ones vector")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("count-corank", parents=[shared],
                       help="co-rank counts by ambient, co-rank and torsion")
    p.add_argument("--ambient", type=int, required=True)
    p.add_argument("--corank", type=int, required=True)
    p.add_argument("--torsion", type=_parse_range, required=True,
                   metavar="RANGE")
    p.add_argument("--method", choices=("oracle", "formula"),
                   default="oracle",
                   help="oracle: staircase census; formula: Stirling factor "
                        "times the full-rank count")
    p.set_defaults(func=_cmd_count_corank)

    p = sub.add_parser("verify", parents=[shared],
                       help="pit the census against the closed formula")
    p.add_argument("--n", type=_parse_range, required=True, metavar="RANGE")
    p.add_argument("--k", type=_parse_range, required=True, metavar="RANGE")
    p.add_argument("--r", type=_parse_range, required=True, metavar="RANGE")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("partitions", parents=[shared],
                       help="list the ordered maps for one (n, k) cell")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--as-maps", action="store_true",
                   help="print assignment patterns instead of partitions")
    p.set_defaults(func=_cmd_partitions)

    p = sub.add_parser("series", parents=[shared],
                       help="export a coefficient series with partial sums")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r-max", type=int, required=True)
    p.add_argument("--family", choices=("unital", "full-rank"),
                   default="unital")
    p.add_argument("--out", metavar="PATH", default=None,
                   help="write to this file instead of stdout")
    p.add_argument("--max-n", type=int, default=4,
                   help="refuse ranks above this (default 4)")
    p.set_defaults(func=_cmd_series)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SearchBudgetExceeded as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
