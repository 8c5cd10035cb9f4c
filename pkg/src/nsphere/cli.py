"""Command-line front end: sample, verify, bench, schedule.

Exit codes: 0 success, 2 bad flags, 3 unsupported (method, n),
4 unwritable output path.  Data output is byte-deterministic for fixed
flags and seed (benchmark timing columns exempt).
"""

from __future__ import annotations

import argparse
import sys

from . import bench as bench_mod
from . import suites
from .errors import UnsupportedDimension
from .rng import RNG_TAGS, RngStream
from .samplers import SAMPLER_TAGS, sample_many

EXIT_OK = 0
EXIT_BAD_FLAGS = 2
EXIT_UNSUPPORTED = 3
EXIT_UNWRITABLE = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nsphere",
        description="Uniform sampling on hyperspheres and balls; "
        "statistical verification and benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    method_tags = ", ".join(SAMPLER_TAGS)
    rng_tags = ", ".join(RNG_TAGS)

    p = sub.add_parser("sample", help="emit random points, one per line")
    p.add_argument("--method", required=True, choices=sorted(SAMPLER_TAGS),
                   metavar="METHOD", help=f"one of: {method_tags}")
    p.add_argument("--n", type=int, required=True, help="dimension")
    p.add_argument("--count", type=int, default=1, help="number of points")
    p.add_argument("--rng", choices=sorted(RNG_TAGS), default="mt64",
                   metavar="RNG", help=f"one of: {rng_tags}")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("verify", help="run a statistical test battery")
    p.add_argument("--suite", required=True, choices=suites.SUITE_NAMES)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--rng", choices=sorted(RNG_TAGS), default="mt64",
                   metavar="RNG", help=f"one of: {rng_tags}")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--alpha", type=float, default=0.001)
    p.add_argument("--out", default=None)

    p = sub.add_parser("bench", help="time seconds per component over the schedule")
    p.add_argument("--methods", default="muller,sorted-basic,sorted-bucket,sorted-insitu",
                   help=f"comma list of: {method_tags}")
    p.add_argument("--rngs", default="mt32,mt64,lcg48,mt64x",
                   help=f"comma list of: {rng_tags}")
    p.add_argument("--max-n", type=int, default=1000)
    p.add_argument("--vectors", type=int, default=None,
                   help="vectors per cell (default adaptive)")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", default=None)

    p = sub.add_parser("schedule", help="print the benchmark dimension schedule")
    p.add_argument("--max-n", type=int, required=True)

    return parser


def _open_out(path):
    if path is None:
        return sys.stdout, False
    try:
        return open(path, "w"), True
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_UNWRITABLE)


def _cmd_sample(args) -> int:
    try:
        stream = RngStream(RNG_TAGS[args.rng], args.seed)
        pts = sample_many(SAMPLER_TAGS[args.method], args.n, args.count, stream)
    except UnsupportedDimension as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_FLAGS
    fh, close = _open_out(args.out)
    try:
        for row in pts:
            cells = [f"{x:.17g}" for x in row]
            if args.format == "csv":
                fh.write(",".join(cells) + "\n")
            else:
                fh.write("[" + ", ".join(cells) + "]\n")
    finally:
        if close:
            fh.close()
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        rows = suites.run_suite(
            args.suite, args.samples, RNG_TAGS[args.rng], args.seed, args.alpha
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_FLAGS
    fh, close = _open_out(args.out)
    try:
        fh.write(suites.CSV_HEADER + "\n")
        for row in rows:
            fh.write(row.as_csv() + "\n")
    finally:
        if close:
            fh.close()
    ok = suites.suite_passes(rows, args.alpha)
    print(f"suite {args.suite}: {'pass' if ok else 'FAIL'}", file=sys.stderr)
    return EXIT_OK if ok else 1


def _cmd_bench(args) -> int:
    try:
        methods = [SAMPLER_TAGS[t] for t in args.methods.split(",") if t]
        rngs = [RNG_TAGS[t] for t in args.rngs.split(",") if t]
    except KeyError as exc:
        print(f"error: unknown tag {exc}", file=sys.stderr)
        return EXIT_BAD_FLAGS
    if args.max_n < 2:
        print("error: --max-n must be >= 2", file=sys.stderr)
        return EXIT_BAD_FLAGS
    records = bench_mod.run_grid(methods, rngs, args.max_n, args.vectors, args.seed)
    fh, close = _open_out(args.out)
    try:
        fh.write(bench_mod.records_to_csv(records))
    finally:
        if close:
            fh.close()
    for rec in records:
        print(rec.as_csv(), file=sys.stderr)
    return EXIT_OK


def _cmd_schedule(args) -> int:
    if args.max_n < 2:
        print("error: --max-n must be >= 2", file=sys.stderr)
        return EXIT_BAD_FLAGS
    for n in bench_mod.schedule(args.max_n).values:
        print(n)
    return EXIT_OK


_COMMANDS = {
    "sample": _cmd_sample,
    "verify": _cmd_verify,
    "bench": _cmd_bench,
    "schedule": _cmd_schedule,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
