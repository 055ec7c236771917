"""Compiled inner loops over bit-packed SG tables.

Values are packed least-significant-bit-first, ``8 // bits`` values per byte.
Since bits divides 8, no value straddles a byte boundary.
"""

import numpy as np
from numba import njit


@njit(inline="always")
def get(buf, bits, n):
    pos = n * bits
    return (buf[pos >> 3] >> (pos & 7)) & ((1 << bits) - 1)


@njit(inline="always")
def put(buf, bits, n, v):
    pos = n * bits
    shift = pos & 7
    mask = ((1 << bits) - 1) << shift
    buf[pos >> 3] = (buf[pos >> 3] & ~mask) | (v << shift)


@njit(cache=True, nogil=True)
def fill(buf, bits, start, stop, subs, divs, bound):
    """Compute SG values for positions start..stop-1 in place."""
    stamp = np.full(bound + 2, -1, np.int64)
    for n in range(start, stop):
        for s in subs:
            if s <= n:
                stamp[get(buf, bits, n - s)] = n
        if n > 0:
            for d in divs:
                if n % d == 0:
                    stamp[get(buf, bits, n // d)] = n
        m = 0
        while stamp[m] == n:
            m += 1
        put(buf, bits, n, m)


@njit(cache=True, nogil=True)
def first_inconsistent(buf, bits, stop, subs, divs, bound):
    """First position whose stored value is not the mex of its options, or -1."""
    # corrupted bytes may hold any value up to 255
    stamp = np.full(258, -1, np.int64)
    for n in range(stop):
        for s in subs:
            if s <= n:
                stamp[get(buf, bits, n - s)] = n
        if n > 0:
            for d in divs:
                if n % d == 0:
                    stamp[get(buf, bits, n // d)] = n
        m = 0
        while stamp[m] == n:
            m += 1
        if get(buf, bits, n) != m:
            return n
    return -1


@njit(cache=True, nogil=True)
def unpack(buf, bits, start, stop):
    out = np.empty(max(stop - start, 0), np.uint8)
    for n in range(start, stop):
        out[n - start] = get(buf, bits, n)
    return out


@njit(cache=True, nogil=True)
def gap_stats(buf, bits, stop, nvalues):
    """Per-value first occurrence, count, max gap and where it ends (streaming)."""
    first = np.full(nvalues, -1, np.int64)
    last = np.full(nvalues, -1, np.int64)
    count = np.zeros(nvalues, np.int64)
    max_gap = np.full(nvalues, -1, np.int64)
    gap_end = np.full(nvalues, -1, np.int64)
    for n in range(stop):
        v = get(buf, bits, n)
        if v >= nvalues:
            continue
        if last[v] < 0:
            first[v] = n
        else:
            g = n - last[v]
            if g > max_gap[v]:
                max_gap[v] = g
                gap_end[v] = n
        last[v] = n
        count[v] += 1
    return first, count, max_gap, gap_end


@njit(cache=True, nogil=True)
def window_check(buf, bits, stop, value, window, n_min):
    """Check every n in (n_min, stop) has ``value`` among positions n-window..n-1.

    Returns (first counterexample or -1, tightest window that works on this range).
    The tightest window is max over checked n of n - (last occurrence before n).
    """
    last = -1
    worst = 0
    bad = -1
    for n in range(stop):
        if n > n_min:
            if last < 0:
                dist = n + 1
            else:
                dist = n - last
            if dist > worst:
                worst = dist
            if dist > window and bad < 0:
                bad = n
        if get(buf, bits, n) == value:
            last = n
    return bad, worst


@njit(cache=True, nogil=True)
def lemma_5mod6(buf, bits, stop):
    """Counterexample to: m = 5 (mod 6), m >= 7, no 2 in SG(m-7..m) implies SG(m) = 0."""
    checked = 0
    for m in range(11, stop, 6):
        ok = False
        for i in range(8):
            if get(buf, bits, m - i) == 2:
                ok = True
                break
        if ok:
            continue
        checked += 1
        if get(buf, bits, m) != 0:
            return m, checked
    return -1, checked


@njit(cache=True, nogil=True)
def positions_equal(buf, bits, stop, value, out):
    """Write positions holding ``value`` into out; return how many were found."""
    k = 0
    for n in range(stop):
        if get(buf, bits, n) == value:
            if k < out.shape[0]:
                out[k] = n
            k += 1
    return k


@njit(cache=True, nogil=True)
def run_stats(buf, bits, stop, s):
    """Runs of equal 0/1 values strictly between SG >= 2 positions.

    Returns (longest run of 0, longest run of 1, interior runs, interior runs
    whose length is not a multiple of s). Runs touching a value >= 2 or either
    end of the table are boundary runs and are not counted as interior.
    """
    longest = np.zeros(2, np.int64)
    interior = 0
    off = 0
    cur = -1
    length = 0
    left_open = True  # current run touches a boundary on its left
    for n in range(stop):
        v = get(buf, bits, n)
        if v == cur:
            length += 1
            continue
        if cur == 0 or cur == 1:
            if length > longest[cur]:
                longest[cur] = length
            if not left_open and v <= 1:
                interior += 1
                if length % s != 0:
                    off += 1
        left_open = cur > 1 or cur < 0
        cur = v
        length = 1
    if (cur == 0 or cur == 1) and length > longest[cur]:
        longest[cur] = length
    return longest[0], longest[1], interior, off
