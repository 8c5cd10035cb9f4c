"""Numba-compiled kernels: RNG stepping and the point samplers.

All kernels operate on a shared generator state layout, a uint64 array:

    state[0]      cumulative count of uniform() draws
    state[1]      word index (Mersenne Twister position)
    state[2:626]  generator words (MT32 uses 624, MT64 uses 312,
                  the 48-bit LCG and xorshift64* use one word)

Uniform draws are consumed in a fixed canonical order, so the batch
kernels reproduce bit for bit what a scalar draw-by-draw loop would do.
"""

import math

import numpy as np
from numba import njit

from .errors import DegenerateInput

STATE_LEN = 626

# generator ids (must match rng.RngKind ordering)
KIND_MT32 = 0
KIND_MT64 = 1
KIND_LCG48 = 2
KIND_XS64 = 3

_U0 = np.uint64(0)
_U1 = np.uint64(1)

# MT19937 (32-bit) constants
_MT32_N = 624
_MT32_M = 397
_MT32_MATRIX = np.uint64(0x9908B0DF)
_MT32_UPPER = np.uint64(0x80000000)
_MT32_LOWER = np.uint64(0x7FFFFFFF)
_MASK32 = np.uint64(0xFFFFFFFF)

# MT19937-64 constants
_MT64_N = 312
_MT64_M = 156
_MT64_MATRIX = np.uint64(0xB5026F5AA96619E9)
_MT64_UPPER = np.uint64(0xFFFFFFFF80000000)
_MT64_LOWER = np.uint64(0x7FFFFFFF)

# drand48 linear congruential recurrence
_LCG_A = np.uint64(0x5DEECE66D)
_LCG_C = np.uint64(0xB)
_MASK48 = np.uint64(0xFFFFFFFFFFFF)

# xorshift64* multiplier (Marsaglia xorshift with output scrambling)
_XS_MULT = np.uint64(0x2545F4914F6CDD1D)

_INV32 = 1.0 / 4294967296.0
_INV48 = 1.0 / 281474976710656.0
_INV53 = 1.0 / 9007199254740992.0

_TWO_PI = 2.0 * math.pi


@njit(cache=True)
def _mt32_twist(st):
    for i in range(_MT32_N):
        y = (st[2 + i] & _MT32_UPPER) | (st[2 + (i + 1) % _MT32_N] & _MT32_LOWER)
        x = st[2 + (i + _MT32_M) % _MT32_N] ^ (y >> _U1)
        if y & _U1:
            x ^= _MT32_MATRIX
        st[2 + i] = x & _MASK32
    st[1] = _U0


@njit(cache=True)
def _mt64_twist(st):
    for i in range(_MT64_N):
        y = (st[2 + i] & _MT64_UPPER) | (st[2 + (i + 1) % _MT64_N] & _MT64_LOWER)
        x = st[2 + (i + _MT64_M) % _MT64_N] ^ (y >> _U1)
        if y & _U1:
            x ^= _MT64_MATRIX
        st[2 + i] = x
    st[1] = _U0


@njit(inline="always")
def _raw(kind, st):
    """One generator word; does not touch the draw counter."""
    if kind == KIND_MT32:
        if st[1] >= np.uint64(_MT32_N):
            _mt32_twist(st)
        i = np.int64(st[1])
        st[1] = np.uint64(i + 1)
        y = st[2 + i]
        y ^= y >> np.uint64(11)
        y ^= (y << np.uint64(7)) & np.uint64(0x9D2C5680)
        y ^= (y << np.uint64(15)) & np.uint64(0xEFC60000)
        y ^= y >> np.uint64(18)
        return y & _MASK32
    elif kind == KIND_MT64:
        if st[1] >= np.uint64(_MT64_N):
            _mt64_twist(st)
        i = np.int64(st[1])
        st[1] = np.uint64(i + 1)
        y = st[2 + i]
        y ^= (y >> np.uint64(29)) & np.uint64(0x5555555555555555)
        y ^= (y << np.uint64(17)) & np.uint64(0x71D67FFFEDA60000)
        y ^= (y << np.uint64(37)) & np.uint64(0xFFF7EEE000000000)
        y ^= y >> np.uint64(43)
        return y
    elif kind == KIND_LCG48:
        st[2] = (_LCG_A * st[2] + _LCG_C) & _MASK48
        return st[2]
    else:
        x = st[2]
        x ^= x >> np.uint64(12)
        x ^= x << np.uint64(25)
        x ^= x >> np.uint64(27)
        st[2] = x
        return x * _XS_MULT


@njit(inline="always")
def _uniform(kind, st):
    """One draw in [0, 1); increments the draw counter.

    32- and 48-bit words map exactly via division by 2^width; 64-bit words
    keep the top 53 bits so the result stays strictly below 1.
    """
    st[0] += _U1
    w = _raw(kind, st)
    if kind == KIND_MT32:
        return np.float64(w) * _INV32
    elif kind == KIND_LCG48:
        return np.float64(w) * _INV48
    else:
        return np.float64(w >> np.uint64(11)) * _INV53


@njit(cache=True)
def _raw_one(kind, st):
    return _raw(kind, st)


@njit(cache=True)
def _uniform_one(kind, st):
    return _uniform(kind, st)


@njit(cache=True)
def _fill_uniforms(kind, st, out):
    for i in range(out.shape[0]):
        out[i] = _uniform(kind, st)


@njit(inline="always")
def _disk_pair(kind, st):
    """Rejection-accepted point in the unit disk; S = 0 is accepted."""
    while True:
        a = 2.0 * _uniform(kind, st) - 1.0
        b = 2.0 * _uniform(kind, st) - 1.0
        s = a * a + b * b
        if s < 1.0:
            return a, b, s


@njit(inline="always")
def _fill_pairs(n2, kind, st, S, a, b):
    # S = 0 pairs are redrawn: the direction (a,b)/sqrt(S) is undefined there.
    for i in range(n2):
        while True:
            ai = 2.0 * _uniform(kind, st) - 1.0
            bi = 2.0 * _uniform(kind, st) - 1.0
            si = ai * ai + bi * bi
            if 0.0 < si < 1.0:
                S[i] = si
                a[i] = ai
                b[i] = bi
                break


@njit(inline="always")
def _sort_pairs_insertion(n2, S, a, b, S2, a2, b2):
    """Insertion sort ascending by S into the output triple."""
    for i in range(n2):
        S2[i] = S[i]
        a2[i] = a[i]
        b2[i] = b[i]
    for i in range(1, n2):
        ks = S2[i]
        ka = a2[i]
        kb = b2[i]
        j = i - 1
        while j >= 0 and S2[j] > ks:
            S2[j + 1] = S2[j]
            a2[j + 1] = a2[j]
            b2[j + 1] = b2[j]
            j -= 1
        S2[j + 1] = ks
        a2[j + 1] = ka
        b2[j + 1] = kb


@njit(cache=True)
def _sort_pairs_quick(n2, S, a, b, S2, a2, b2):
    """Copy then in-place quicksort of the (S, a, b) triple ascending by
    S; insertion sort below 24 elements, median-of-three pivots."""
    for i in range(n2):
        S2[i] = S[i]
        a2[i] = a[i]
        b2[i] = b[i]
    stack_lo = np.empty(64, np.int64)
    stack_hi = np.empty(64, np.int64)
    stack_lo[0] = 0
    stack_hi[0] = n2 - 1
    top = 1
    while top > 0:
        top -= 1
        lo = stack_lo[top]
        hi = stack_hi[top]
        if hi - lo < 24:
            for i in range(lo + 1, hi + 1):
                ks = S2[i]
                ka = a2[i]
                kb = b2[i]
                j = i - 1
                while j >= lo and S2[j] > ks:
                    S2[j + 1] = S2[j]
                    a2[j + 1] = a2[j]
                    b2[j + 1] = b2[j]
                    j -= 1
                S2[j + 1] = ks
                a2[j + 1] = ka
                b2[j + 1] = kb
            continue
        mid = (lo + hi) // 2
        p0 = S2[lo]
        p1 = S2[mid]
        p2 = S2[hi]
        if p0 > p1:
            p0, p1 = p1, p0
        if p1 > p2:
            p1 = p2 if p0 <= p2 else p0
        pivot = p1
        i = lo - 1
        j = hi + 1
        while True:
            i += 1
            while S2[i] < pivot:
                i += 1
            j -= 1
            while S2[j] > pivot:
                j -= 1
            if i >= j:
                break
            S2[i], S2[j] = S2[j], S2[i]
            a2[i], a2[j] = a2[j], a2[i]
            b2[i], b2[j] = b2[j], b2[i]
        stack_lo[top] = lo
        stack_hi[top] = j
        top += 1
        stack_lo[top] = j + 1
        stack_hi[top] = hi
        top += 1


@njit(cache=True)
def _sort_pairs_std(n2, S, a, b, S2, a2, b2):
    """Plain comparison sort ascending by S into the output triple."""
    if n2 <= 32:
        _sort_pairs_insertion(n2, S, a, b, S2, a2, b2)
    else:
        _sort_pairs_quick(n2, S, a, b, S2, a2, b2)


@njit(inline="always")
def _sort_pairs_bucket(n2, nb, S, a, b, bidx, bounds, wp, S2, a2, b2):
    """Distribution sort: scatter into nb buckets by floor(S*nb), then
    insertion-sort each bucket.  Expected bucket occupancy is ~8, so the
    per-bucket pass is linear overall."""
    for k in range(nb + 1):
        bounds[k] = 0
    for i in range(n2):
        k = np.int64(S[i] * nb)
        bidx[i] = k
        bounds[k + 1] += 1
    for k in range(nb):
        bounds[k + 1] += bounds[k]
    for k in range(nb):
        wp[k] = bounds[k]
    for i in range(n2):
        k = bidx[i]
        p = wp[k]
        S2[p] = S[i]
        a2[p] = a[i]
        b2[p] = b[i]
        wp[k] = p + 1
    for k in range(nb):
        lo = bounds[k]
        hi = bounds[k + 1]
        for i in range(lo + 1, hi):
            ks = S2[i]
            ka = a2[i]
            kb = b2[i]
            j = i - 1
            while j >= lo and S2[j] > ks:
                S2[j + 1] = S2[j]
                a2[j + 1] = a2[j]
                b2[j + 1] = b2[j]
                j -= 1
            S2[j + 1] = ks
            a2[j + 1] = ka
            b2[j + 1] = kb


@njit(inline="always")
def _emit_sphere_even(n2, S2, a2, b2, v, off):
    s = 1.0 / S2[n2 - 1]
    s_prev = 0.0
    for i in range(n2):
        s_cur = S2[i]
        t = math.sqrt((1.0 - s_prev / s_cur) * s)
        v[off + 2 * i] = a2[i] * t
        v[off + 2 * i + 1] = b2[i] * t
        s_prev = s_cur


@njit(inline="always")
def _emit_sphere_odd(n2, S2, a2, b2, v, off):
    # Drops the a-component of the smallest-S pair and folds the
    # renormalization into the scale factor; writes 2*n2 - 1 components.
    s = 1.0 / S2[n2 - 1]
    s = s / (1.0 - s * a2[0] * a2[0])
    v[off] = b2[0] * math.sqrt(s)
    s_prev = S2[0]
    for i in range(1, n2):
        s_cur = S2[i]
        t = math.sqrt((1.0 - s_prev / s_cur) * s)
        v[off + 2 * i - 1] = a2[i] * t
        v[off + 2 * i] = b2[i] * t
        s_prev = s_cur


@njit(inline="always")
def _emit_ball_even(n2, S2, a2, b2, v, off):
    s_prev = 0.0
    for i in range(n2):
        s_cur = S2[i]
        t = math.sqrt(1.0 - s_prev / s_cur)
        v[off + 2 * i] = a2[i] * t
        v[off + 2 * i + 1] = b2[i] * t
        s_prev = s_cur


@njit(inline="always")
def _sphere_sorted_std_one(n, kind, st, v, off, S, a, b, S2, a2, b2):
    even = n % 2 == 0
    n2 = n // 2 if even else (n + 1) // 2
    _fill_pairs(n2, kind, st, S, a, b)
    _sort_pairs_std(n2, S, a, b, S2, a2, b2)
    if even:
        _emit_sphere_even(n2, S2, a2, b2, v, off)
    else:
        _emit_sphere_odd(n2, S2, a2, b2, v, off)


@njit(cache=True, nogil=True)
def batch_sorted_basic(n, kind, st, out):
    even = n % 2 == 0
    n2 = n // 2 if even else (n + 1) // 2
    S = np.empty(n2)
    a = np.empty(n2)
    b = np.empty(n2)
    S2 = np.empty(n2)
    a2 = np.empty(n2)
    b2 = np.empty(n2)
    flat = out.reshape(out.size)
    small = n2 <= 32
    for r in range(out.shape[0]):
        _fill_pairs(n2, kind, st, S, a, b)
        if small:
            _sort_pairs_insertion(n2, S, a, b, S2, a2, b2)
        else:
            _sort_pairs_quick(n2, S, a, b, S2, a2, b2)
        if even:
            _emit_sphere_even(n2, S2, a2, b2, flat, r * n)
        else:
            _emit_sphere_odd(n2, S2, a2, b2, flat, r * n)


@njit(cache=True, nogil=True)
def batch_sorted_bucket(n, kind, st, out):
    even = n % 2 == 0
    n2 = n // 2 if even else (n + 1) // 2
    nb = 1 + (2 * n2) // 16
    S = np.empty(n2)
    a = np.empty(n2)
    b = np.empty(n2)
    S2 = np.empty(n2)
    a2 = np.empty(n2)
    b2 = np.empty(n2)
    bidx = np.empty(n2, np.int64)
    bounds = np.empty(nb + 1, np.int64)
    wp = np.empty(nb + 1, np.int64)
    flat = out.reshape(out.size)
    for r in range(out.shape[0]):
        _fill_pairs(n2, kind, st, S, a, b)
        _sort_pairs_bucket(n2, nb, S, a, b, bidx, bounds, wp, S2, a2, b2)
        if even:
            _emit_sphere_even(n2, S2, a2, b2, flat, r * n)
        else:
            _emit_sphere_odd(n2, S2, a2, b2, flat, r * n)


@njit(inline="always")
def _insitu_sort(v, off, n2, stack_lo, stack_hi):
    """In-place quicksort of (key, b) slot pairs by |key|, insertion below 16."""
    stack_lo[0] = 0
    stack_hi[0] = n2 - 1
    top = 1
    while top > 0:
        top -= 1
        lo = stack_lo[top]
        hi = stack_hi[top]
        if hi - lo < 16:
            for i in range(lo + 1, hi + 1):
                ks = v[off + 2 * i]
                kb = v[off + 2 * i + 1]
                ka = abs(ks)
                j = i - 1
                while j >= lo and abs(v[off + 2 * j]) > ka:
                    v[off + 2 * j + 2] = v[off + 2 * j]
                    v[off + 2 * j + 3] = v[off + 2 * j + 1]
                    j -= 1
                v[off + 2 * j + 2] = ks
                v[off + 2 * j + 3] = kb
            continue
        mid = (lo + hi) // 2
        pivot = abs(v[off + 2 * mid])
        i = lo - 1
        j = hi + 1
        while True:
            i += 1
            while abs(v[off + 2 * i]) < pivot:
                i += 1
            j -= 1
            while abs(v[off + 2 * j]) > pivot:
                j -= 1
            if i >= j:
                break
            t0 = v[off + 2 * i]
            t1 = v[off + 2 * i + 1]
            v[off + 2 * i] = v[off + 2 * j]
            v[off + 2 * i + 1] = v[off + 2 * j + 1]
            v[off + 2 * j] = t0
            v[off + 2 * j + 1] = t1
        stack_lo[top] = lo
        stack_hi[top] = j
        top += 1
        stack_lo[top] = j + 1
        stack_hi[top] = hi
        top += 1


@njit(inline="always")
def _in_situ_even_one(n, kind, st, v, off, stack_lo, stack_hi):
    n2 = n // 2
    for i in range(n2):
        while True:
            ai = 2.0 * _uniform(kind, st) - 1.0
            bi = 2.0 * _uniform(kind, st) - 1.0
            si = ai * ai + bi * bi
            if 0.0 < si < 1.0:
                # pack squared radius and the sign of a into one slot
                v[off + 2 * i] = si if ai > 0 else -si
                v[off + 2 * i + 1] = bi
                break
    _insitu_sort(v, off, n2, stack_lo, stack_hi)
    s = 1.0 / abs(v[off + 2 * (n2 - 1)])
    s_prev = 0.0
    for i in range(n2):
        sp = v[off + 2 * i]
        bi = v[off + 2 * i + 1]
        s_cur = abs(sp)
        t = math.sqrt((1.0 - s_prev / s_cur) * s)
        rad = s_cur - bi * bi
        if rad < 0.0:
            rad = 0.0  # rounding guard; preserves the unit norm
        ai = math.sqrt(rad) if sp > 0 else -math.sqrt(rad)
        v[off + 2 * i] = ai * t
        v[off + 2 * i + 1] = bi * t
        s_prev = s_cur


@njit(cache=True, nogil=True)
def batch_in_situ(n, kind, st, out):
    flat = out.reshape(out.size)
    stack_lo = np.empty(64, np.int64)
    stack_hi = np.empty(64, np.int64)
    for r in range(out.shape[0]):
        _in_situ_even_one(n, kind, st, flat, r * n, stack_lo, stack_hi)


@njit(inline="always")
def _muller_one(n, kind, st, v, off):
    acc = 0.0
    lim = n if n % 2 == 0 else n - 1
    for k in range(0, lim, 2):
        r = math.sqrt(-2.0 * math.log(1.0 - _uniform(kind, st)))
        p = _uniform(kind, st)
        c = math.cos(_TWO_PI * p)
        v[off + k] = c
        t = r * math.sqrt(1.0 - c * c)
        v[off + k + 1] = t if p < 0.5 else -t
        v[off + k] = c * r
        acc += v[off + k] * v[off + k]
        acc += v[off + k + 1] * v[off + k + 1]
    if n % 2 == 1:
        r = math.sqrt(-2.0 * math.log(1.0 - _uniform(kind, st)))
        p = _TWO_PI * _uniform(kind, st)
        v[off + n - 1] = r * math.cos(p)
        acc += v[off + n - 1] * v[off + n - 1]
    norm = math.sqrt(acc)
    for k in range(n):
        v[off + k] /= norm


@njit(cache=True, nogil=True)
def batch_muller(n, kind, st, out):
    flat = out.reshape(out.size)
    for r in range(out.shape[0]):
        _muller_one(n, kind, st, flat, r * n)


@njit(cache=True, nogil=True)
def batch_polar3(kind, st, out):
    for r in range(out.shape[0]):
        x3 = 2.0 * _uniform(kind, st) - 1.0
        phi = _TWO_PI * _uniform(kind, st)
        rt = math.sqrt(1.0 - x3 * x3)
        out[r, 0] = math.cos(phi) * rt
        out[r, 1] = math.sin(phi) * rt
        out[r, 2] = x3


@njit(cache=True, nogil=True)
def batch_marsaglia3(kind, st, out):
    for r in range(out.shape[0]):
        a, b, s = _disk_pair(kind, st)
        if s == 0.0:
            # exact pole; the general formula is 0/0 here
            out[r, 0] = 0.0
            out[r, 1] = 0.0
            out[r, 2] = 1.0
            continue
        x3 = 1.0 - 2.0 * s
        t = math.sqrt((1.0 - x3 * x3) / s)
        out[r, 0] = a * t
        out[r, 1] = b * t
        out[r, 2] = x3


@njit(cache=True, nogil=True)
def batch_marsaglia4(kind, st, out):
    for r in range(out.shape[0]):
        x1, x2, s1 = _disk_pair(kind, st)
        a, b, s2 = _disk_pair(kind, st)
        if s2 == 0.0:
            raise DegenerateInput("second disk pair has zero radius")
        t = math.sqrt((1.0 - s1) / s2)
        out[r, 0] = x1
        out[r, 1] = x2
        out[r, 2] = a * t
        out[r, 3] = b * t


@njit(cache=True, nogil=True)
def batch_sibuya(n, kind, st, out):
    n2 = n // 2
    x = np.empty(n2)
    y = np.empty(n2)
    u = np.empty(max(n2 - 1, 1))
    uu = u[: n2 - 1]
    for r in range(out.shape[0]):
        for i in range(n2):
            while True:
                ai = 2.0 * _uniform(kind, st) - 1.0
                bi = 2.0 * _uniform(kind, st) - 1.0
                si = ai * ai + bi * bi
                if 0.0 < si < 1.0:
                    inv = 1.0 / math.sqrt(si)
                    x[i] = ai * inv
                    y[i] = bi * inv
                    break
        for j in range(n2 - 1):
            u[j] = _uniform(kind, st)
        uu.sort()
        prev = 0.0
        for i in range(n2):
            cur = u[i] if i < n2 - 1 else 1.0
            t = math.sqrt(cur - prev)
            out[r, 2 * i] = x[i] * t
            out[r, 2 * i + 1] = y[i] * t
            prev = cur


@njit(cache=True, nogil=True)
def batch_reject_cube(n, kind, st, out):
    for r in range(out.shape[0]):
        while True:
            acc = 0.0
            for k in range(n):
                c = 2.0 * _uniform(kind, st) - 1.0
                out[r, k] = c
                acc += c * c
            if 0.0 < acc < 1.0:
                break
        norm = math.sqrt(acc)
        for k in range(n):
            out[r, k] /= norm


@njit(cache=True, nogil=True)
def batch_ball_sorted(n, kind, st, out):
    n2 = n // 2
    S = np.empty(n2)
    a = np.empty(n2)
    b = np.empty(n2)
    S2 = np.empty(n2)
    a2 = np.empty(n2)
    b2 = np.empty(n2)
    flat = out.reshape(out.size)
    small = n2 <= 32
    for r in range(out.shape[0]):
        _fill_pairs(n2, kind, st, S, a, b)
        if small:
            _sort_pairs_insertion(n2, S, a, b, S2, a2, b2)
        else:
            _sort_pairs_quick(n2, S, a, b, S2, a2, b2)
        _emit_ball_even(n2, S2, a2, b2, flat, r * n)


@njit(cache=True, nogil=True)
def batch_ball_via_sphere(n, kind, st, out):
    m = n + 2
    n2 = m // 2 if m % 2 == 0 else (m + 1) // 2
    S = np.empty(n2)
    a = np.empty(n2)
    b = np.empty(n2)
    S2 = np.empty(n2)
    a2 = np.empty(n2)
    b2 = np.empty(n2)
    buf = np.empty(m)
    for r in range(out.shape[0]):
        _sphere_sorted_std_one(m, kind, st, buf, 0, S, a, b, S2, a2, b2)
        for k in range(n):
            out[r, k] = buf[k]
