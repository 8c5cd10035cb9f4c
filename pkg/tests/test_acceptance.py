"""End-to-end acceptance suite.

Each test prints exactly one ``ACCEPTANCE <k>: PASS|FAIL`` line for its
criterion before asserting, so the full scorecard is visible in the
captured output of any failing run.

Criterion 8 compares relative speeds of the compiled kernels and is
environment-sensitive by design; criterion 1 carries a wall-clock
budget that depends on the host's core count (the generation kernels
release the GIL, so the sweep threads across all available cores).
"""

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np
import pytest

from nsphere.bench import run_cell, schedule
from nsphere.rng import RngKind, RngStream
from nsphere.samplers import BALL_KINDS, SamplerKind, sample_many, supports
from nsphere.verify import ks_one_sample, ks_two_sample, chi_square_binned, marginal_cdf

ALPHA = 1e-3
GOLDEN = Path(__file__).parent / "data" / "schedule_100000.txt"


def report(num, ok, detail):
    print(f"ACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {detail}")


def norms2(pts):
    return np.einsum("ij,ij->i", pts, pts)


def _norm_cell(kind, n, seed, samples=100_000):
    """Worst norm deviation for one (sampler, n) cell, chunked."""
    stream = RngStream(RngKind.LCG48, seed)
    rows = min(samples, max(1, 4_000_000 // n))
    out = np.empty((rows, n))
    worst = -math.inf
    remaining = samples
    while remaining:
        m = min(rows, remaining)
        pts = sample_many(kind, n, m, stream, out=out[:m])
        nn = norms2(pts)
        if kind in BALL_KINDS:
            # strict interior: largest squared norm must stay below 1
            worst = max(worst, float(nn.max()) - 1.0)
        else:
            worst = max(worst, float(np.max(np.abs(nn - 1.0))))
        remaining -= m
    return worst


def test_criterion_1_unit_norm_full_schedule():
    dims = schedule(10_000).values
    cells = [
        (kind, n)
        for kind in SamplerKind
        for n in dims
        if supports(kind, n)
    ]
    t0 = time.perf_counter()
    with ThreadPoolExecutor(max_workers=os.cpu_count()) as pool:
        worsts = list(
            pool.map(lambda c: _norm_cell(c[0], c[1], 1000 + c[1]), cells)
        )
    elapsed = time.perf_counter() - t0
    bad = [
        (kind.value, n, w)
        for (kind, n), w in zip(cells, worsts)
        if (w >= 0.0 if kind in BALL_KINDS else w >= 1e-12)
    ]
    invariant_ok = not bad
    runtime_ok = elapsed < 300.0
    report(
        1,
        invariant_ok and runtime_ok,
        f"unit-norm over {len(cells)} cells x 1e5 samples: "
        f"violations={len(bad)}, elapsed={elapsed:.0f}s (budget 300s, "
        f"{os.cpu_count()} cpu)",
    )
    assert invariant_ok, f"norm violations in cells: {bad[:5]}"
    assert runtime_ok, f"runtime {elapsed:.0f}s exceeds the 300s budget"


def test_criterion_2_distribution_equivalence():
    failures = 0
    total = 0
    for n in (3, 4, 8, 9, 24):
        base = sample_many(
            SamplerKind.MULLER, n, 100_000, RngStream(RngKind.MT19937_64, 20 + n)
        )
        new = sample_many(
            SamplerKind.SORTED_PAIR_BASIC, n, 100_000,
            RngStream(RngKind.MT19937_64, 120 + n),
        )
        for stat_a, stat_b in (
            (base[:, 0], new[:, 0]),
            (base[:, 0] * base[:, 1], new[:, 0] * new[:, 1]),
            (np.abs(base).max(axis=1), np.abs(new).max(axis=1)),
        ):
            total += 1
            if ks_two_sample(stat_a, stat_b, ALPHA).p_value <= ALPHA:
                failures += 1
    allowance = max(1, math.ceil(total * ALPHA))
    ok = failures <= allowance
    report(
        2,
        ok,
        f"KS sorted-basic vs muller on X1, X1*X2, max|Xi| at n in "
        f"{{3,4,8,9,24}}: {failures}/{total} failures (allowance {allowance})",
    )
    assert ok


def test_criterion_3_analytic_marginals():
    m = 1_000_000
    x3 = sample_many(
        SamplerKind.SORTED_PAIR_BASIC, 3, m, RngStream(RngKind.LCG48, 31)
    )[:, 0]
    p_uniform = chi_square_binned(x3, marginal_cdf(3), 50, ALPHA).p_value
    pts4 = sample_many(
        SamplerKind.SORTED_PAIR_BASIC, 4, m, RngStream(RngKind.LCG48, 32)
    )
    p_semicircle = chi_square_binned(pts4[:, 0], marginal_cdf(4), 50, ALPHA).p_value
    proj = pts4[:, 0] ** 2 + pts4[:, 1] ** 2
    p_projection = ks_one_sample(proj, lambda t: t, ALPHA).p_value
    ok = min(p_uniform, p_semicircle, p_projection) > ALPHA
    report(
        3,
        ok,
        f"n=3 uniform p={p_uniform:.3g}, n=4 semicircle p={p_semicircle:.3g}, "
        f"n=4 squared-radius uniform p={p_projection:.3g}",
    )
    assert ok


def test_criterion_4_sibuya_equivalence():
    ps = []
    for n in (4, 16):
        a = sample_many(
            SamplerKind.SIBUYA_EVEN, n, 100_000, RngStream(RngKind.MT19937_32, 40 + n)
        )[:, 0]
        b = sample_many(
            SamplerKind.SORTED_PAIR_BASIC, n, 100_000,
            RngStream(RngKind.MT19937_32, 140 + n),
        )[:, 0]
        ps.append(ks_two_sample(a, b, ALPHA).p_value)
    ok = min(ps) > ALPHA
    report(4, ok, f"sibuya vs sorted-basic KS p-values at n=4,16: "
                  f"{ps[0]:.3g}, {ps[1]:.3g}")
    assert ok


def test_criterion_5_order_statistic_lemmas():
    m = 100_000
    stream = RngStream(RngKind.MT19937_64, 50)
    ps = {}
    for k in (2, 5, 16):
        mx = stream.uniforms(m * k).reshape(m, k).max(axis=1)
        ps[f"max-of-{k}"] = ks_one_sample(
            mx, lambda x, k=k: np.clip(x, 0, 1) ** k, ALPHA
        ).p_value
    w = 8
    xs = np.sort(stream.uniforms(m * w).reshape(m, w), axis=1)
    etas = xs[:, :-1] / xs[:, 1:]
    for i in range(1, w):
        ps[f"eta-{i}"] = ks_one_sample(
            etas[:, i - 1], lambda x, i=i: np.clip(x, 0, 1) ** i, ALPHA
        ).p_value
    worst = min(ps.values())
    ok = worst > ALPHA
    report(5, ok, f"max-of-m and ratio lemmas at 1e5 reps: worst p={worst:.3g} "
                  f"({min(ps, key=ps.get)})")
    assert ok


def test_criterion_6_rng_consumption():
    n, m = 10, 100_000
    stream = RngStream(RngKind.MT19937_32, 60)
    before = stream.draws
    sample_many(SamplerKind.SORTED_PAIR_BASIC, n, m, stream)
    sorted_ratio = (stream.draws - before) / (m * n)
    before = stream.draws
    sample_many(SamplerKind.MULLER, n, m, stream)
    muller_ratio = (stream.draws - before) / (m * n)
    four_over_pi = 4.0 / math.pi
    ok = (
        abs(sorted_ratio - four_over_pi) <= 0.02 * four_over_pi
        and muller_ratio == 1.0
    )
    report(
        6,
        ok,
        f"sorted-basic draws/component {sorted_ratio:.4f} "
        f"(target 4/pi={four_over_pi:.4f} +-2%), muller {muller_ratio}",
    )
    assert ok


def test_criterion_7_variant_consistency():
    exact_ok = True
    close_ok = True
    worst = 0.0
    for n in (16, 100, 1000):
        basic = sample_many(
            SamplerKind.SORTED_PAIR_BASIC, n, 10_000, RngStream(RngKind.LCG48, 70)
        )
        bucket = sample_many(
            SamplerKind.SORTED_PAIR_BUCKET, n, 10_000, RngStream(RngKind.LCG48, 70)
        )
        exact_ok &= np.array_equal(basic, bucket)
        in_situ = sample_many(
            SamplerKind.SORTED_PAIR_IN_SITU, n, 10_000, RngStream(RngKind.LCG48, 70)
        )
        worst = max(worst, float(np.max(np.abs(basic - in_situ))))
    close_ok = worst < 1e-9
    ok = exact_ok and close_ok
    report(
        7,
        ok,
        f"bucket bit-exact with basic: {exact_ok}; in-situ worst component "
        f"delta {worst:.2e} (< 1e-9)",
    )
    assert ok


def test_criterion_8_benchmark_orderings():
    all_rngs = list(RngKind)
    small_dims = [n for n in schedule(10_000).values if n <= 8]

    def cell(method, rng, n, vectors):
        return run_cell(method, rng, n, vectors, seed=80).seconds_per_component

    # (a) the sorted-pair method beats Muller at small n for >= 3 of 4 RNGs
    rng_wins = 0
    for rng in all_rngs:
        wins = all(
            cell(SamplerKind.SORTED_PAIR_BASIC, rng, n, 300_000)
            < cell(SamplerKind.MULLER, rng, n, 300_000)
            for n in small_dims
        )
        rng_wins += wins
    a_ok = rng_wins >= 3

    # (b) BucketSort beats the plain sort at n >= 1000
    big_dims = [n for n in schedule(10_000).values if n >= 1000]
    b_ok = all(
        cell(SamplerKind.SORTED_PAIR_BUCKET, RngKind.LCG48, n, max(500, 1_000_000 // n))
        < cell(SamplerKind.SORTED_PAIR_BASIC, RngKind.LCG48, n, max(500, 1_000_000 // n))
        for n in big_dims
    )

    # (c) the bucket/basic crossover lands inside n in [10, 500]
    mid_dims = [n for n in schedule(10_000).values if 10 <= n <= 500]
    bucket_faster = [
        cell(SamplerKind.SORTED_PAIR_BUCKET, RngKind.LCG48, n, max(2000, 1_000_000 // n))
        < cell(SamplerKind.SORTED_PAIR_BASIC, RngKind.LCG48, n, max(2000, 1_000_000 // n))
        for n in mid_dims
    ]
    crossover = next(
        (n for n, faster in zip(mid_dims, bucket_faster) if faster), None
    )
    c_ok = crossover is not None and bucket_faster[-1]

    ok = a_ok and b_ok and c_ok
    report(
        8,
        ok,
        f"(a) basic<muller at n<=8 for {rng_wins}/4 RNGs; "
        f"(b) bucket<basic at n>=1000: {b_ok}; "
        f"(c) crossover at n={crossover} in [10,500]: {c_ok}",
    )
    assert ok


def test_criterion_9_schedule_golden():
    got = schedule(100_000).values
    want = tuple(int(line) for line in GOLDEN.read_text().split())
    prefix = (2, 3, 4, 5, 8, 9, 14, 15, 24, 25, 40, 41, 66)
    ok = got == want and got[: len(prefix)] == prefix
    report(9, ok, f"schedule(1e5): {len(got)} dims, prefix {got[:6]}..., "
                  f"golden file match: {got == want}")
    assert ok
