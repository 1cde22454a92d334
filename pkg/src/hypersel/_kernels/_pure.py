"""Pure-Python kernels for arity-2 tournament scans.

A tournament on m vertices is packed into an integer mask: pair
positions follow the lexicographic order of (i, j) with i < j, and a set
bit means the pair picks j (the larger endpoint).  The compiled module
_fast implements the same API; hypersel._kernels chooses between them at
import time.
"""

from __future__ import annotations

from itertools import combinations

MAX_M = 11  # C(11,2) = 55 pair bits fit comfortably in a machine word


def _check_m(m: int) -> None:
    if not 1 <= m <= MAX_M:
        raise ValueError(f"m must be in 1..{MAX_M}, got {m}")


def _pair_tables(m):
    """Per-vertex masks: (wins-when-set, wins-when-clear) bit positions."""
    high = [0] * m  # positions where v is the larger endpoint
    low = [0] * m   # positions where v is the smaller endpoint
    for b, (i, j) in enumerate(combinations(range(m), 2)):
        low[i] |= 1 << b
        high[j] |= 1 << b
    return high, low


def tournament_scores(mask: int, m: int) -> tuple:
    """Number of pairs picking each vertex, indexed by vertex."""
    _check_m(m)
    high, low = _pair_tables(m)
    return tuple(
        (mask & high[v]).bit_count() + low[v].bit_count() - (mask & low[v]).bit_count()
        for v in range(m)
    )


def regular_masks_exhaustive(m: int) -> list:
    """All constant-score tournament masks, by full scan of 2^C(m,2)."""
    _check_m(m)
    pairs = m * (m - 1) // 2
    if m == 1:
        return [0]
    if pairs % m != 0:
        return []
    target = pairs // m
    high, low = _pair_tables(m)
    nlow = [lv.bit_count() for lv in low]
    out = []
    for x in range(1 << pairs):
        for v in range(m):
            if (x & high[v]).bit_count() + nlow[v] - (x & low[v]).bit_count() != target:
                break
        else:
            out.append(x)
    return out


def regular_masks_backtracking(m: int) -> list:
    """All constant-score tournament masks, by row-wise pruned search.

    Row v decides every pair (v, w) with w > v, so wins[v] is final once
    the row is placed; branches are cut when a later vertex can no
    longer reach the target score.
    """
    _check_m(m)
    pairs = m * (m - 1) // 2
    if m == 1:
        return [0]
    if pairs % m != 0:
        return []
    target = pairs // m
    offsets = []
    acc = 0
    for v in range(m):
        offsets.append(acc)
        acc += m - 1 - v
    out = []
    wins = [0] * m

    def place_row(v: int, mask: int) -> None:
        if v == m:
            out.append(mask)
            return
        need = target - wins[v]
        rest = list(range(v + 1, m))
        if not 0 <= need <= len(rest):
            return
        remaining_after = m - v - 2  # pairs still open for each w > v
        for beaten in combinations(rest, need):
            beaten_set = set(beaten)
            row_mask = 0
            ok = True
            for w in rest:
                if w in beaten_set:
                    continue
                # pair (v, w) picks w: set its bit, w gains a win
                row_mask |= 1 << (offsets[v] + w - v - 1)
                wins[w] += 1
                if wins[w] > target:
                    ok = False
            if ok:
                for w in rest:
                    if wins[w] + remaining_after < target:
                        ok = False
                        break
            if ok:
                place_row(v + 1, mask | row_mask)
            for w in rest:
                if w not in beaten_set:
                    wins[w] -= 1

    place_row(0, 0)
    out.sort()
    return out


def first_cycle_violation(m: int, masks) -> tuple | None:
    """First (mask, x, y) with pair {x,y} picking y but no z closing a
    3-cycle (pair {y,z} picks z and pair {z,x} picks x); None if every
    mask satisfies the property."""
    _check_m(m)
    offsets = []
    acc = 0
    for v in range(m):
        offsets.append(acc)
        acc += m - 1 - v

    def pick(mask: int, a: int, b: int) -> int:
        i, j = (a, b) if a < b else (b, a)
        bit = offsets[i] + j - i - 1
        return j if (mask >> bit) & 1 else i

    for mask in masks:
        for x in range(m):
            for y in range(m):
                if y == x or pick(mask, x, y) != y:
                    continue
                for z in range(m):
                    if z != x and z != y and pick(mask, y, z) == z and pick(mask, z, x) == x:
                        break
                else:
                    return (mask, x, y)
    return None
