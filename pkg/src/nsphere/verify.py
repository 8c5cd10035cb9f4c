"""Goodness-of-fit machinery for the statistical property suite.

Statistics are computed directly; p-values use the asymptotic formulas
(Kolmogorov distribution series, chi-square via the regularized
incomplete gamma function).  Exact small-sample tables are out of scope.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate
from scipy.special import gammaincc

from .errors import BinsTooFine, TooFewSamples

DEFAULT_ALPHA = 1e-3
_MIN_SAMPLES = 10


class GofTest(enum.Enum):
    KS1 = "KS1"
    KS2 = "KS2"
    CHI_SQUARE = "ChiSquare"


@dataclass(frozen=True)
class GofReport:
    test: GofTest
    statistic: float
    p_value: float
    samples: int
    alpha: float
    passed: bool


def _report(test, stat, p, samples, alpha):
    return GofReport(
        test=test,
        statistic=float(stat),
        p_value=float(p),
        samples=int(samples),
        alpha=alpha,
        passed=bool(p > alpha),
    )


def kolmogorov_sf(y: float, terms: int = 100) -> float:
    """P(K > y) for the Kolmogorov distribution, series truncated."""
    if y < 1e-8:
        return 1.0
    total = 0.0
    for j in range(1, terms + 1):
        term = math.exp(-2.0 * j * j * y * y)
        if term == 0.0:
            break
        total += term if j % 2 == 1 else -term
    return min(1.0, max(0.0, 2.0 * total))


def ks_one_sample(values, cdf: Callable, alpha: float = DEFAULT_ALPHA) -> GofReport:
    """One-sample KS test of `values` against the monotone CDF."""
    values = np.asarray(values, dtype=float)
    m = values.size
    if m < _MIN_SAMPLES:
        raise TooFewSamples(f"need at least {_MIN_SAMPLES} values, got {m}")
    f = np.asarray(cdf(np.sort(values)), dtype=float)
    grid = np.arange(1, m + 1) / m
    d = max(np.max(grid - f), np.max(f - (grid - 1.0 / m)))
    en = math.sqrt(m)
    p = kolmogorov_sf((en + 0.12 + 0.11 / en) * d)
    return _report(GofTest.KS1, d, p, m, alpha)


def ks_two_sample(a, b, alpha: float = DEFAULT_ALPHA) -> GofReport:
    """Two-sample KS test for identical underlying distributions."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    n1, n2 = a.size, b.size
    if n1 < _MIN_SAMPLES or n2 < _MIN_SAMPLES:
        raise TooFewSamples(f"need at least {_MIN_SAMPLES} values per sample")
    both = np.concatenate([a, b])
    cdf1 = np.searchsorted(a, both, side="right") / n1
    cdf2 = np.searchsorted(b, both, side="right") / n2
    d = float(np.max(np.abs(cdf1 - cdf2)))
    en = math.sqrt(n1 * n2 / (n1 + n2))
    p = kolmogorov_sf((en + 0.12 + 0.11 / en) * d)
    return _report(GofTest.KS2, d, p, n1 + n2, alpha)


def chi_square_binned(
    values, cdf: Callable, bins: int, alpha: float = DEFAULT_ALPHA
) -> GofReport:
    """Chi-square test on equiprobable bins of cdf(values)."""
    values = np.asarray(values, dtype=float)
    m = values.size
    expected = m / bins
    if expected < 5.0:
        raise BinsTooFine(f"{bins} bins leave {expected:.2f} expected per bin (< 5)")
    u = np.asarray(cdf(values), dtype=float)
    idx = np.minimum((u * bins).astype(np.int64), bins - 1)
    counts = np.bincount(np.maximum(idx, 0), minlength=bins)[:bins]
    stat = float(np.sum((counts - expected) ** 2) / expected)
    p = float(gammaincc((bins - 1) / 2.0, stat / 2.0))
    return _report(GofTest.CHI_SQUARE, stat, p, m, alpha)


@dataclass(frozen=True)
class MarginalLaw:
    """Analytic CDF of a single sphere coordinate at dimension n."""

    n: int
    cdf: Callable

    def __call__(self, x):
        return self.cdf(x)


def _marginal_density_const(n: int) -> float:
    # normalizes (1 - t^2)^((n-3)/2) on [-1, 1]
    return math.exp(math.lgamma(n / 2.0) - math.lgamma((n - 1) / 2.0)) / math.sqrt(
        math.pi
    )


def marginal_cdf(n: int, grid_points: int = 8193) -> MarginalLaw:
    """Coordinate CDF for sphere dimension n.

    Closed forms for n = 2, 3, 4; elsewhere the density is integrated by
    adaptive quadrature between the nodes of a dense grid and evaluated
    by interpolation.
    """
    if n < 2:
        raise ValueError("marginal law requires n >= 2")
    if n == 2:

        def cdf(x):
            return 0.5 + np.arcsin(np.clip(x, -1.0, 1.0)) / np.pi

    elif n == 3:

        def cdf(x):
            return np.clip((np.asarray(x, dtype=float) + 1.0) / 2.0, 0.0, 1.0)

    elif n == 4:

        def cdf(x):
            x = np.clip(x, -1.0, 1.0)
            return 0.5 + (x * np.sqrt(1.0 - x * x) + np.arcsin(x)) / np.pi

    else:
        c = _marginal_density_const(n)
        ex = (n - 3) / 2.0

        def density(t):
            return c * (1.0 - t * t) ** ex

        nodes = np.linspace(-1.0, 1.0, grid_points)
        pieces = np.empty(grid_points)
        pieces[0] = 0.0
        for i in range(1, grid_points):
            pieces[i], _ = integrate.quad(
                density, nodes[i - 1], nodes[i], epsabs=1e-12, epsrel=1e-10
            )
        values = np.cumsum(pieces)
        values /= values[-1]

        def cdf(x):
            return np.interp(np.asarray(x, dtype=float), nodes, values)

    return MarginalLaw(n=n, cdf=cdf)
