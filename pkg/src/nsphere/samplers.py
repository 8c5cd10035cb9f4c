"""Point samplers: classical methods, the sorted-pair method and its
variants, and ball-interior samplers.

``sample`` produces one certified point; ``sample_many`` fills an
(m, n) array and is the fast path used by the verification and
benchmark machinery.  Both consume uniforms from an ``RngStream`` in a
fixed canonical order, so results are reproducible bit for bit.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import UnsupportedDimension
from .rng import RngStream

NORM_TOL = 1e-12


@dataclass(frozen=True)
class UnitVector:
    """A point certified to lie on the unit sphere surface."""

    coords: np.ndarray

    def __post_init__(self):
        nrm2 = float(np.dot(self.coords, self.coords))
        if abs(nrm2 - 1.0) > NORM_TOL:
            raise ValueError(f"squared norm {nrm2} deviates from 1 beyond {NORM_TOL}")

    @property
    def n(self) -> int:
        return self.coords.shape[0]


@dataclass(frozen=True)
class BallPoint:
    """A point certified to lie in the closed unit ball."""

    coords: np.ndarray

    def __post_init__(self):
        nrm2 = float(np.dot(self.coords, self.coords))
        if nrm2 > 1.0 + NORM_TOL:
            raise ValueError(f"squared norm {nrm2} exceeds 1 beyond {NORM_TOL}")

    @property
    def n(self) -> int:
        return self.coords.shape[0]


@dataclass(frozen=True)
class DiskPair:
    """One rejection-accepted pair (a, b) with its squared radius S."""

    a: float
    b: float
    S: float


class SamplerKind(enum.Enum):
    MULLER = "muller"
    POLAR3 = "polar3"
    MARSAGLIA3 = "marsaglia3"
    MARSAGLIA4 = "marsaglia4"
    SIBUYA_EVEN = "sibuya"
    SORTED_PAIR_BASIC = "sorted-basic"
    SORTED_PAIR_BUCKET = "sorted-bucket"
    SORTED_PAIR_IN_SITU = "sorted-insitu"
    BALL_SORTED_PAIR = "ball-sorted"
    BALL_VIA_SPHERE = "ball-proj"
    REJECTION_CUBE = "reject-cube"


SAMPLER_TAGS = {k.value: k for k in SamplerKind}

BALL_KINDS = frozenset({SamplerKind.BALL_SORTED_PAIR, SamplerKind.BALL_VIA_SPHERE})

REJECTION_CUBE_MAX_N = 12


def supports(kind: SamplerKind, n: int) -> bool:
    """Whether `kind` can produce points of dimension n."""
    if kind in (SamplerKind.POLAR3, SamplerKind.MARSAGLIA3):
        return n == 3
    if kind is SamplerKind.MARSAGLIA4:
        return n == 4
    if kind in (
        SamplerKind.SIBUYA_EVEN,
        SamplerKind.SORTED_PAIR_IN_SITU,
        SamplerKind.BALL_SORTED_PAIR,
    ):
        return n >= 2 and n % 2 == 0
    if kind is SamplerKind.REJECTION_CUBE:
        return 2 <= n <= REJECTION_CUBE_MAX_N
    if kind is SamplerKind.BALL_VIA_SPHERE:
        return n >= 1
    return n >= 2


def _check(kind: SamplerKind, n: int) -> None:
    if not supports(kind, n):
        raise UnsupportedDimension(f"{kind.value} does not support n={n}")


def draw_disk_pair(stream: RngStream) -> DiskPair:
    """Rejection-sample a point of the unit disk; S = a^2 + b^2 < 1."""
    a, b, s = _kernels._disk_pair(stream._kid, stream._state)
    return DiskPair(a=float(a), b=float(b), S=float(s))


def sample_many(
    kind: SamplerKind,
    n: int,
    count: int,
    stream: RngStream,
    out: np.ndarray | None = None,
) -> np.ndarray:
    """Generate `count` points of dimension n into a (count, n) array."""
    _check(kind, n)
    if count < 1:
        raise ValueError("count must be >= 1")
    if out is None:
        out = np.empty((count, n))
    elif out.shape != (count, n):
        raise ValueError(f"out must have shape {(count, n)}")
    kid, st = stream._kid, stream._state
    if kind is SamplerKind.MULLER:
        _kernels.batch_muller(n, kid, st, out)
    elif kind is SamplerKind.POLAR3:
        _kernels.batch_polar3(kid, st, out)
    elif kind is SamplerKind.MARSAGLIA3:
        _kernels.batch_marsaglia3(kid, st, out)
    elif kind is SamplerKind.MARSAGLIA4:
        _kernels.batch_marsaglia4(kid, st, out)
    elif kind is SamplerKind.SIBUYA_EVEN:
        _kernels.batch_sibuya(n, kid, st, out)
    elif kind is SamplerKind.SORTED_PAIR_BASIC:
        _kernels.batch_sorted_basic(n, kid, st, out)
    elif kind is SamplerKind.SORTED_PAIR_BUCKET:
        _kernels.batch_sorted_bucket(n, kid, st, out)
    elif kind is SamplerKind.SORTED_PAIR_IN_SITU:
        _kernels.batch_in_situ(n, kid, st, out)
    elif kind is SamplerKind.BALL_SORTED_PAIR:
        _kernels.batch_ball_sorted(n, kid, st, out)
    elif kind is SamplerKind.BALL_VIA_SPHERE:
        _kernels.batch_ball_via_sphere(n, kid, st, out)
    else:
        _kernels.batch_reject_cube(n, kid, st, out)
    return out


def sample(kind: SamplerKind, n: int, stream: RngStream) -> UnitVector | BallPoint:
    """Generate one certified point of dimension n."""
    coords = sample_many(kind, n, 1, stream)[0]
    if kind in BALL_KINDS:
        return BallPoint(coords=coords)
    return UnitVector(coords=coords)


# named entry points for the individual operations

def sample_sphere_sorted_pairs(n: int, stream: RngStream) -> UnitVector:
    if n % 2 != 0:
        raise UnsupportedDimension("even-n entry point called with odd n")
    return sample(SamplerKind.SORTED_PAIR_BASIC, n, stream)


def sample_sphere_sorted_pairs_odd(n: int, stream: RngStream) -> UnitVector:
    if n % 2 == 0:
        raise UnsupportedDimension("odd-n entry point called with even n")
    return sample(SamplerKind.SORTED_PAIR_BASIC, n, stream)


def sample_sphere_sorted_pairs_bucket(n: int, stream: RngStream) -> UnitVector:
    return sample(SamplerKind.SORTED_PAIR_BUCKET, n, stream)


def sample_sphere_sorted_pairs_in_situ(n: int, stream: RngStream) -> UnitVector:
    return sample(SamplerKind.SORTED_PAIR_IN_SITU, n, stream)


def sample_ball_sorted_pairs(n: int, stream: RngStream) -> BallPoint:
    return sample(SamplerKind.BALL_SORTED_PAIR, n, stream)


def sample_ball_via_sphere(n: int, stream: RngStream) -> BallPoint:
    return sample(SamplerKind.BALL_VIA_SPHERE, n, stream)


def sample_muller(n: int, stream: RngStream) -> UnitVector:
    return sample(SamplerKind.MULLER, n, stream)


def sample_polar3(stream: RngStream) -> UnitVector:
    return sample(SamplerKind.POLAR3, 3, stream)


def sample_marsaglia3(stream: RngStream) -> UnitVector:
    return sample(SamplerKind.MARSAGLIA3, 3, stream)


def sample_marsaglia4(stream: RngStream) -> UnitVector:
    return sample(SamplerKind.MARSAGLIA4, 4, stream)


def sample_sibuya_even(n: int, stream: RngStream) -> UnitVector:
    return sample(SamplerKind.SIBUYA_EVEN, n, stream)


def sample_rejection_cube(n: int, stream: RngStream) -> UnitVector:
    if n > REJECTION_CUBE_MAX_N:
        from .errors import DimensionTooLarge

        raise DimensionTooLarge(
            f"rejection in the cube is impractical beyond n={REJECTION_CUBE_MAX_N}"
        )
    return sample(SamplerKind.REJECTION_CUBE, n, stream)
