"""Seedable deterministic generators with bit-exact reproducibility.

Four generators are supported: the 32- and 64-bit Mersenne Twisters
(standard ``init_genrand`` seeding), the drand48 48-bit linear
congruential generator, and a fast 64-bit Marsaglia-family generator.
The latter is xorshift64* (shifts 12/25/27, multiplier
0x2545F4914F6CDD1D), seeded through one splitmix64 step; the literature
reference for "Marsaglia and Tsang's 64-bit RNG" does not pin down an
exact algorithm, so this stand-in is deliberately labeled.
"""

from __future__ import annotations

import enum

import numpy as np

from . import _kernels


class RngKind(enum.Enum):
    """Generator selection; values match the kernel dispatch ids."""

    MT19937_32 = _kernels.KIND_MT32
    MT19937_64 = _kernels.KIND_MT64
    LCG48 = _kernels.KIND_LCG48
    MARSAGLIA_TSANG_64 = _kernels.KIND_XS64


# CLI vocabulary (mt64x is the Marsaglia-Tsang slot)
RNG_TAGS = {
    "mt32": RngKind.MT19937_32,
    "mt64": RngKind.MT19937_64,
    "lcg48": RngKind.LCG48,
    "mt64x": RngKind.MARSAGLIA_TSANG_64,
}

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


class RngStream:
    """A sequential, single-owner stream of pseudo-random numbers.

    Two streams built from the same (kind, seed) produce identical
    sequences.  ``uniform()`` is strictly half-open in [0, 1) and each
    call increments the draw counter by one; ``raw()`` does not count.
    """

    def __init__(self, kind: RngKind, seed: int):
        self.kind = kind
        self.seed = seed & _MASK64
        self._kid = kind.value
        self._state = np.zeros(_kernels.STATE_LEN, dtype=np.uint64)
        self._seed_state()

    def _seed_state(self) -> None:
        st = self._state
        seed = self.seed
        if self.kind is RngKind.MT19937_32:
            mt = seed & 0xFFFFFFFF
            st[2] = mt
            for i in range(1, 624):
                mt = (1812433253 * (mt ^ (mt >> 30)) + i) & 0xFFFFFFFF
                st[2 + i] = mt
            st[1] = 624
        elif self.kind is RngKind.MT19937_64:
            mt = seed
            st[2] = mt
            for i in range(1, 312):
                mt = (6364136223846793005 * (mt ^ (mt >> 62)) + i) & _MASK64
                st[2 + i] = mt
            st[1] = 312
        elif self.kind is RngKind.LCG48:
            st[2] = ((seed << 16) | 0x330E) & 0xFFFFFFFFFFFF
        else:
            x = _splitmix64(seed)
            st[2] = x if x != 0 else 0x9E3779B97F4A7C15

    def raw(self) -> int:
        """Next generator word (32, 48, or 64 bits depending on kind)."""
        return int(_kernels._raw_one(self._kid, self._state))

    def uniform(self) -> float:
        """Next value in [0, 1)."""
        return float(_kernels._uniform_one(self._kid, self._state))

    def uniforms(self, count: int) -> np.ndarray:
        """Fill a fresh array with `count` uniform draws."""
        out = np.empty(count)
        _kernels._fill_uniforms(self._kid, self._state, out)
        return out

    @property
    def draws(self) -> int:
        """Cumulative number of uniform() draws consumed so far."""
        return int(self._state[0])


def rng_new(kind: RngKind, seed: int) -> RngStream:
    return RngStream(kind, seed)


def draw_count(stream: RngStream) -> int:
    return stream.draws
