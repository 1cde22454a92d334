# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels for arity-2 tournament scans.

Mirrors hypersel._kernels._pure exactly: same mask convention (pairs in
lexicographic order, set bit picks the larger endpoint), same outputs.
"""

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

MAX_M = 11

cdef int _check_m(int m) except -1:
    if m < 1 or m > 11:
        raise ValueError(f"m must be in 1..11, got {m}")
    return 0


cdef void _fill_tables(int m, unsigned long long *high, unsigned long long *low) nogil:
    cdef int i, j, b
    for i in range(m):
        high[i] = 0
        low[i] = 0
    b = 0
    for i in range(m):
        for j in range(i + 1, m):
            low[i] |= 1ULL << b
            high[j] |= 1ULL << b
            b += 1


def tournament_scores(mask, int m):
    """Number of pairs picking each vertex, indexed by vertex."""
    _check_m(m)
    cdef unsigned long long x = mask
    cdef unsigned long long high[11]
    cdef unsigned long long low[11]
    cdef int v
    _fill_tables(m, high, low)
    return tuple(
        __builtin_popcountll(x & high[v])
        + __builtin_popcountll(low[v])
        - __builtin_popcountll(x & low[v])
        for v in range(m)
    )


def regular_masks_exhaustive(int m):
    """All constant-score tournament masks, by full scan of 2^C(m,2)."""
    _check_m(m)
    cdef int pairs = m * (m - 1) // 2
    if m == 1:
        return [0]
    if pairs % m != 0:
        return []
    cdef int target = pairs // m
    cdef unsigned long long high[11]
    cdef unsigned long long low[11]
    cdef int nlow[11]
    cdef int v, ok
    cdef unsigned long long x, limit
    _fill_tables(m, high, low)
    for v in range(m):
        nlow[v] = __builtin_popcountll(low[v])
    out = []
    limit = 1ULL << pairs
    x = 0
    while x < limit:
        ok = 1
        for v in range(m):
            if (__builtin_popcountll(x & high[v]) + nlow[v]
                    - __builtin_popcountll(x & low[v])) != target:
                ok = 0
                break
        if ok:
            out.append(x)
        x += 1
    return out


cdef void _row_offsets(int m, int *offsets) nogil:
    cdef int v, acc
    acc = 0
    for v in range(m):
        offsets[v] = acc
        acc += m - 1 - v


def regular_masks_backtracking(int m):
    """All constant-score tournament masks, by row-wise pruned search."""
    _check_m(m)
    cdef int pairs = m * (m - 1) // 2
    if m == 1:
        return [0]
    if pairs % m != 0:
        return []
    cdef int target = pairs // m
    cdef int offsets[11]
    cdef int wins[11]
    cdef int v
    _row_offsets(m, offsets)
    for v in range(m):
        wins[v] = 0
    out = []
    _place_row(0, 0, m, target, offsets, wins, out)
    out.sort()
    return out


cdef void _place_row(int v, unsigned long long mask, int m, int target,
                     int *offsets, int *wins, list out):
    cdef int rest_n, need, remaining_after, w, k, ok
    cdef unsigned long long s, row_mask
    if v == m:
        out.append(mask)
        return
    rest_n = m - 1 - v
    need = target - wins[v]
    if need < 0 or need > rest_n:
        return
    remaining_after = m - v - 2
    # s enumerates which of the rest v beats (bit k <-> vertex v+1+k)
    for s in range(1ULL << rest_n):
        if __builtin_popcountll(s) != need:
            continue
        row_mask = 0
        ok = 1
        for k in range(rest_n):
            if (s >> k) & 1:
                continue
            w = v + 1 + k
            row_mask |= 1ULL << (offsets[v] + k)
            wins[w] += 1
            if wins[w] > target:
                ok = 0
        if ok:
            for k in range(rest_n):
                w = v + 1 + k
                if wins[w] + remaining_after < target:
                    ok = 0
                    break
        if ok:
            _place_row(v + 1, mask | row_mask, m, target, offsets, wins, out)
        for k in range(rest_n):
            if not (s >> k) & 1:
                wins[v + 1 + k] -= 1


def first_cycle_violation(int m, masks):
    """First (mask, x, y) violating the 3-cycle property; None if all pass."""
    _check_m(m)
    cdef int offsets[11]
    cdef int x, y, z, found
    cdef unsigned long long mk
    _row_offsets(m, offsets)
    for mask in masks:
        mk = mask
        for x in range(m):
            for y in range(m):
                if y == x or _pick(mk, offsets, x, y) != y:
                    continue
                found = 0
                for z in range(m):
                    if (z != x and z != y
                            and _pick(mk, offsets, y, z) == z
                            and _pick(mk, offsets, z, x) == x):
                        found = 1
                        break
                if not found:
                    return (mask, x, y)
    return None


cdef inline int _pick(unsigned long long mask, int *offsets, int a, int b) nogil:
    cdef int i, j, bit
    if a < b:
        i = a
        j = b
    else:
        i = b
        j = a
    bit = offsets[i] + j - i - 1
    if (mask >> bit) & 1:
        return j
    return i
