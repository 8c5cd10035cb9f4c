"""Straight-line scalar implementations of every sampler.

These mirror the compiled kernels expression for expression and exist
for two reasons: they are the readable statement of each algorithm, and
they accept any object with a ``uniform()`` method, so tests can feed
scripted uniform sequences and check worked examples exactly.  On a
real stream they reproduce the kernel output bit for bit.
"""

from __future__ import annotations

import math

from .errors import DegenerateInput


class ScriptedStream:
    """Replays a fixed list of uniforms; for worked-example tests."""

    def __init__(self, values):
        self._values = list(values)
        self._pos = 0
        self.draws = 0

    def uniform(self) -> float:
        v = self._values[self._pos]
        self._pos += 1
        self.draws += 1
        return v


def draw_disk_pair(stream):
    """(a, b, S) with S = a^2 + b^2 < 1; S = 0 is accepted."""
    while True:
        a = 2.0 * stream.uniform() - 1.0
        b = 2.0 * stream.uniform() - 1.0
        s = a * a + b * b
        if s < 1.0:
            return a, b, s


def _draw_pairs(n2, stream):
    # zero-radius pairs are redrawn: their direction is undefined
    pairs = []
    for _ in range(n2):
        while True:
            a = 2.0 * stream.uniform() - 1.0
            b = 2.0 * stream.uniform() - 1.0
            s = a * a + b * b
            if 0.0 < s < 1.0:
                pairs.append((s, a, b))
                break
    return pairs


def _emit_even(pairs, v):
    n2 = len(pairs)
    s = 1.0 / pairs[n2 - 1][0]
    s_prev = 0.0
    for i, (s_cur, a, b) in enumerate(pairs):
        t = math.sqrt((1.0 - s_prev / s_cur) * s)
        v[2 * i] = a * t
        v[2 * i + 1] = b * t
        s_prev = s_cur


def _emit_odd(pairs, v):
    n2 = len(pairs)
    s = 1.0 / pairs[n2 - 1][0]
    s = s / (1.0 - s * pairs[0][1] * pairs[0][1])
    v[0] = pairs[0][2] * math.sqrt(s)
    s_prev = pairs[0][0]
    for i in range(1, n2):
        s_cur, a, b = pairs[i]
        t = math.sqrt((1.0 - s_prev / s_cur) * s)
        v[2 * i - 1] = a * t
        v[2 * i] = b * t
        s_prev = s_cur


def sphere_sorted_basic(n, stream):
    """Sorted-pair sampler; even n uses n/2 pairs, odd n runs at n+1 and
    drops the a-component of the smallest pair."""
    even = n % 2 == 0
    n2 = n // 2 if even else (n + 1) // 2
    pairs = sorted(_draw_pairs(n2, stream), key=lambda p: p[0])
    v = [0.0] * n
    if even:
        _emit_even(pairs, v)
    else:
        _emit_odd(pairs, v)
    return v


def sphere_sorted_bucket(n, stream, bucket_size=16):
    """Same output as the basic variant; sorts by scattering the pairs
    into 1 + n/bucket_size buckets keyed on floor(S * nb)."""
    even = n % 2 == 0
    n2 = n // 2 if even else (n + 1) // 2
    nb = 1 + (2 * n2) // bucket_size
    buckets = [[] for _ in range(nb)]
    for p in _draw_pairs(n2, stream):
        buckets[int(p[0] * nb)].append(p)
    pairs = []
    for bucket in buckets:
        bucket.sort(key=lambda p: p[0])
        pairs.extend(bucket)
    v = [0.0] * n
    if even:
        _emit_even(pairs, v)
    else:
        _emit_odd(pairs, v)
    return v


def sphere_sorted_in_situ(n, stream):
    """Even-n variant that packs (sign(a) * S, b) into the output buffer
    and reconstructs a = sign * sqrt(S - b^2) after sorting by |S|."""
    if n % 2 != 0:
        raise DegenerateInput("in-situ variant requires even n")
    n2 = n // 2
    v = [0.0] * n
    for i in range(n2):
        while True:
            a = 2.0 * stream.uniform() - 1.0
            b = 2.0 * stream.uniform() - 1.0
            s = a * a + b * b
            if 0.0 < s < 1.0:
                v[2 * i] = s if a > 0 else -s
                v[2 * i + 1] = b
                break
    order = sorted(range(n2), key=lambda i: abs(v[2 * i]))
    packed = [(v[2 * i], v[2 * i + 1]) for i in order]
    s = 1.0 / abs(packed[n2 - 1][0])
    s_prev = 0.0
    for i, (sp, b) in enumerate(packed):
        s_cur = abs(sp)
        t = math.sqrt((1.0 - s_prev / s_cur) * s)
        rad = max(s_cur - b * b, 0.0)
        a = math.sqrt(rad) if sp > 0 else -math.sqrt(rad)
        v[2 * i] = a * t
        v[2 * i + 1] = b * t
        s_prev = s_cur
    return v


def ball_sorted(n, stream):
    """Ball-interior variant: radii sqrt(1 - S_prev/S_cur), no global
    rescale; the squared norm equals the largest pair radius."""
    if n % 2 != 0:
        raise DegenerateInput("sorted-pair ball sampler requires even n")
    n2 = n // 2
    pairs = sorted(_draw_pairs(n2, stream), key=lambda p: p[0])
    v = [0.0] * n
    s_prev = 0.0
    for i, (s_cur, a, b) in enumerate(pairs):
        t = math.sqrt(1.0 - s_prev / s_cur)
        v[2 * i] = a * t
        v[2 * i + 1] = b * t
        s_prev = s_cur
    return v


def ball_via_sphere(n, stream):
    """First n coordinates of an (n+2)-dimensional sphere point."""
    return sphere_sorted_basic(n + 2, stream)[:n]


def muller(n, stream):
    """Normalized vector of Box-Muller normals; cosine plus sign branch,
    no sine call."""
    v = [0.0] * n
    acc = 0.0
    lim = n if n % 2 == 0 else n - 1
    for k in range(0, lim, 2):
        r = math.sqrt(-2.0 * math.log(1.0 - stream.uniform()))
        p = stream.uniform()
        c = math.cos(2.0 * math.pi * p)
        v[k] = c
        t = r * math.sqrt(1.0 - c * c)
        v[k + 1] = t if p < 0.5 else -t
        v[k] = c * r
        acc += v[k] * v[k]
        acc += v[k + 1] * v[k + 1]
    if n % 2 == 1:
        r = math.sqrt(-2.0 * math.log(1.0 - stream.uniform()))
        p = 2.0 * math.pi * stream.uniform()
        v[n - 1] = r * math.cos(p)
        acc += v[n - 1] * v[n - 1]
    norm = math.sqrt(acc)
    return [x / norm for x in v]


def polar3(stream):
    x3 = 2.0 * stream.uniform() - 1.0
    phi = 2.0 * math.pi * stream.uniform()
    rt = math.sqrt(1.0 - x3 * x3)
    return [math.cos(phi) * rt, math.sin(phi) * rt, x3]


def marsaglia3(stream):
    a, b, s = draw_disk_pair(stream)
    if s == 0.0:
        return [0.0, 0.0, 1.0]
    x3 = 1.0 - 2.0 * s
    t = math.sqrt((1.0 - x3 * x3) / s)
    return [a * t, b * t, x3]


def marsaglia4(stream):
    x1, x2, s1 = draw_disk_pair(stream)
    a, b, s2 = draw_disk_pair(stream)
    if s2 == 0.0:
        raise DegenerateInput("second disk pair has zero radius")
    t = math.sqrt((1.0 - s1) / s2)
    return [x1, x2, a * t, b * t]


def sibuya_even(n, stream):
    """n/2 unit-circle points scaled by sqrt of sorted-uniform gaps."""
    if n % 2 != 0:
        raise DegenerateInput("this formulation requires even n")
    n2 = n // 2
    circle = []
    for s, a, b in _draw_pairs(n2, stream):
        inv = 1.0 / math.sqrt(s)
        circle.append((a * inv, b * inv))
    u = sorted(stream.uniform() for _ in range(n2 - 1))
    u.append(1.0)
    v = [0.0] * n
    prev = 0.0
    for i, (x, y) in enumerate(circle):
        t = math.sqrt(u[i] - prev)
        v[2 * i] = x * t
        v[2 * i + 1] = y * t
        prev = u[i]
    return v


def rejection_cube(n, stream):
    while True:
        coords = [2.0 * stream.uniform() - 1.0 for _ in range(n)]
        acc = sum(c * c for c in coords)
        if 0.0 < acc < 1.0:
            break
    norm = math.sqrt(acc)
    return [c / norm for c in coords]
