"""Benchmark harness: time per component across methods, RNGs and a
golden-ratio dimension schedule.

Cells are timed strictly sequentially with a monotonic clock around the
whole batch; buffers are allocated before measurement, a warmup batch
runs untimed, and output sums are accumulated into a sink so the work
cannot be optimized away.  Three repetitions are timed and the median
is reported; RNG draw counts are deterministic for a fixed seed.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedDimension
from .rng import RNG_TAGS, RngKind, RngStream
from .samplers import SamplerKind, sample_many, supports

GOLDEN_RATIO = 1.618034

BENCH_CSV_HEADER = "method,rng,n,vectors,seconds_per_component,rng_draws_per_component"

_REPS = 3

# defeats dead-code elimination of the timed loops
_sink = 0.0


@dataclass(frozen=True)
class DimensionSchedule:
    values: tuple[int, ...]
    max_n: int


@dataclass(frozen=True)
class BenchRecord:
    method: SamplerKind
    rng: RngKind
    n: int
    vectors: int
    seconds_per_component: float
    rng_draws_per_component: float

    def as_csv(self) -> str:
        method_tag = self.method.value
        rng_tag = {v: k for k, v in RNG_TAGS.items()}[self.rng]
        return (
            f"{method_tag},{rng_tag},{self.n},{self.vectors},"
            f"{self.seconds_per_component:.9g},{self.rng_draws_per_component:.9g}"
        )


def schedule(max_n: int) -> DimensionSchedule:
    """Dimensions starting at 2: even n is followed by n + 1, odd n by
    the largest even number not above n * golden ratio."""
    if max_n < 2:
        raise ValueError("max_n must be >= 2")
    values = []
    n = 2
    while n <= max_n:
        values.append(n)
        if n % 2 == 0:
            n += 1
        else:
            n = int(n * GOLDEN_RATIO) // 2 * 2
    return DimensionSchedule(values=tuple(values), max_n=max_n)


def default_vectors(n: int) -> int:
    """Adaptive per-cell sample count; the source experiment does not
    state one, so cells are sized for roughly comparable work."""
    return max(1000, 10_000_000 // n)


def run_cell(
    method: SamplerKind,
    rng_kind: RngKind,
    n: int,
    vectors: int,
    seed: int,
) -> BenchRecord:
    global _sink
    if not supports(method, n):
        raise UnsupportedDimension(f"{method.value} does not support n={n}")
    if vectors < 1:
        raise ValueError("vectors must be >= 1")
    stream = RngStream(rng_kind, seed)
    out = np.empty((vectors, n))
    warmup = min(vectors // 10, 1000)
    if warmup:
        sample_many(method, n, warmup, stream, out=out[:warmup])
    draws_before = stream.draws
    times = []
    for _ in range(_REPS):
        t0 = time.perf_counter()
        sample_many(method, n, vectors, stream, out=out)
        times.append(time.perf_counter() - t0)
        _sink += float(out[0].sum()) + float(out[-1].sum())
    seconds = statistics.median(times)
    draws = (stream.draws - draws_before) / _REPS
    return BenchRecord(
        method=method,
        rng=rng_kind,
        n=n,
        vectors=vectors,
        seconds_per_component=seconds / (vectors * n),
        rng_draws_per_component=draws / (vectors * n),
    )


def run_grid(
    methods: list[SamplerKind],
    rngs: list[RngKind],
    max_n: int,
    vectors_per_cell: int | None,
    seed: int,
) -> list[BenchRecord]:
    """All valid (method, rng, n) cells in deterministic order; per-cell
    seeds are derived as seed + cell index."""
    if not methods or not rngs:
        raise ValueError("methods and rngs must be nonempty")
    dims = schedule(max_n).values
    records = []
    index = 0
    for method in sorted(methods, key=lambda m: m.value):
        for rng_kind in sorted(rngs, key=lambda r: r.name):
            for n in dims:
                if not supports(method, n):
                    continue
                vectors = (
                    vectors_per_cell if vectors_per_cell else default_vectors(n)
                )
                records.append(run_cell(method, rng_kind, n, vectors, seed + index))
                index += 1
    return records


def records_to_csv(records: list[BenchRecord]) -> str:
    lines = [BENCH_CSV_HEADER]
    lines.extend(r.as_csv() for r in records)
    return "\n".join(lines) + "\n"
