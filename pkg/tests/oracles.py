"""Independent brute-force oracles and shared fixtures.

Everything here re-derives expected values from definitions, staying off
the library's own code paths wherever the point is to cross-check one.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from hypersel.chains import FamilySystem, meets_uniquely
from hypersel.extension import PartialSelection, make_partial
from hypersel.structures import GroundSet, SelectionStructure
from hypersel.vietoris import (
    ModelSpace,
    OpenFamily,
    interval,
    model_space,
    order_model,
    vietoris_contains,
)


# -- scores ---------------------------------------------------------------

def oracle_scores(s: SelectionStructure) -> dict:
    """Recount of every element's score straight from the definition."""
    w = {x: 0 for x in s.ground.labels}
    for sub in combinations(s.ground.labels, s.n):
        w[s.choose(sub)] += 1
    return w


# -- extension ------------------------------------------------------------

def oracle_extend_value(f: PartialSelection, labels: tuple, p: int):
    """Extended value on one subset, recomputed without the classwise
    machinery: score the arity-p restriction, take the least level with
    a small nonempty class, apply f to that class."""
    labs = sorted(labels, key=f.carrier.index)
    m = len(labs)
    w = {x: 0 for x in labs}
    for sub in combinations(labs, p):
        w[f.choose(sub)] += 1
    by_score: dict = {}
    for x, sc in w.items():
        by_score.setdefault(sc, []).append(x)
    r0 = min(sc for sc, xs in by_score.items() if 2 * len(xs) <= m)
    return f.choose(by_score[r0])


# -- vietoris intersection -------------------------------------------------

def oracle_intersect(u: OpenFamily, v: OpenFamily) -> bool:
    """Exhaustive witness search over cell midpoints.

    Cutting the line at every endpoint makes interval membership
    constant on each open cell, so any witness set can be moved onto
    midpoints without changing which members it meets.
    """
    cuts = sorted(
        {b for fam in (u, v) for i in fam.members for b in (i.lo, i.hi)}
    )
    mids = [(a + b) / 2 for a, b in zip(cuts, cuts[1:])]
    cand = [x for x in mids if u.union_contains(x) and v.union_contains(x)]
    for r in range(1, len(cand) + 1):
        for pts in combinations(cand, r):
            if vietoris_contains(u, pts) and vietoris_contains(v, pts):
                return True
    return False


# -- chain agreement --------------------------------------------------------

def oracle_chains_agree(system: FamilySystem, max_len: int = 6):
    """Enumerate every unique-meet walk of at most max_len links and
    compare compositions pairwise per (start, end).  Trivial walks
    count, so a cycle composing to a non-identity map is a conflict.
    Returns (True, None) or (False, (start, end))."""
    fams = system.families
    n = len(fams)
    size = system.arity
    edges = {}
    for i in range(n):
        for j in range(n):
            if i != j:
                link = meets_uniquely(fams[i], fams[j])
                if link is not None:
                    edges[(i, j)] = link.mapping
    out = {i: [] for i in range(n)}
    for (i, j), g in edges.items():
        out[i].append((j, g))
    ident = tuple(range(size))
    seen: dict = {}
    for start in range(n):
        stack = [(start, ident, 0)]
        while stack:
            at, comp, depth = stack.pop()
            key = (start, at)
            if key in seen and comp not in seen[key]:
                return False, key
            seen.setdefault(key, set()).add(comp)
            if depth == max_len:
                continue
            for nxt, g in out[at]:
                stack.append((nxt, tuple(g[x] for x in comp), depth + 1))
    return True, None


def oracle_unique_overlaps(system: FamilySystem) -> bool:
    """Condition 1 alone: ordered overlapping pairs meet uniquely."""
    fams = system.families
    for i, u in enumerate(fams):
        for j, v in enumerate(fams):
            if i == j:
                continue
            overlap = all(
                any(a.intersects(b) for b in v.members) for a in u.members
            ) and all(
                any(b.intersects(a) for a in u.members) for b in v.members
            )
            if overlap and meets_uniquely(u, v) is None:
                return False
    return True


# -- fixtures ---------------------------------------------------------------

def cyclic_pair_table(points: tuple) -> dict:
    """Rotational pair choices plus identity singletons on 3 points."""
    a, b, c = points
    return {
        frozenset({a}): a, frozenset({b}): b, frozenset({c}): c,
        frozenset({a, b}): b,
        frozenset({b, c}): c,
        frozenset({a, c}): a,
    }


def cyclic_model(triple_pick_index: int = 0) -> ModelSpace:
    """Three integer points with a cyclic pair selection, total up to 3."""
    pts = (Fraction(0), Fraction(1), Fraction(2))
    table = cyclic_pair_table(pts)
    table[frozenset(pts)] = pts[triple_pick_index]
    return model_space(pts, make_partial(GroundSet(pts), "upto", 3, table))


def flip_model() -> ModelSpace:
    """Two points closer than the refinement floor with opposing pair
    choices; no neighborhood family separates them."""
    eps = Fraction(1, 2**50)
    pts = (Fraction(0), eps, Fraction(1))
    table = {
        frozenset({pts[0]}): pts[0],
        frozenset({pts[1]}): pts[1],
        frozenset({pts[2]}): pts[2],
        frozenset({pts[0], pts[1]}): pts[0],
        frozenset({pts[0], pts[2]}): pts[0],
        frozenset({pts[1], pts[2]}): pts[2],
    }
    return model_space(pts, make_partial(GroundSet(pts), "upto", 2, table))


def conflict_system() -> FamilySystem:
    """Two-member families where a collapsing link disagrees with the
    direct bijective link, refuting chain agreement."""
    F = Fraction
    r = OpenFamily((interval(0, 1), interval(2, 3)))
    m = OpenFamily((interval(F(1, 2), F(5, 2)), interval(F(31, 10), F(17, 5))))
    v = OpenFamily((interval(F(1, 2), F(3, 2)), interval(F(5, 2), F(7, 2))))
    return FamilySystem((r, m, v), order_model([0, 1, 2, 3], 2, "min"))


def collapse_pair_system() -> FamilySystem:
    """Nice but with a non-bijective transfer out of the base family."""
    F = Fraction
    r = OpenFamily((interval(0, 1), interval(2, 3)))
    m = OpenFamily((interval(F(1, 2), F(5, 2)), interval(F(31, 10), F(17, 5))))
    return FamilySystem((r, m), order_model([0, 1, 2, 3], 2, "min"))


def random_system(rng: random.Random, n_families: int, size: int = 2) -> FamilySystem:
    """Random half-integer interval families over a shared span."""
    fams = []
    span = 4 * (size + 1)
    while len(fams) < n_families:
        cuts = sorted(rng.sample(range(0, span), 2 * size))
        members = tuple(
            interval(Fraction(cuts[2 * i], 2), Fraction(cuts[2 * i + 1], 2))
            for i in range(size)
        )
        fams.append(OpenFamily(members))
    return FamilySystem(tuple(fams), order_model([0, 1, 2, 3], 2, "min"))


def random_points(rng: random.Random, count: int) -> tuple:
    """Distinct rationals with denominators 1..4, sorted."""
    pts: set = set()
    while len(pts) < count:
        pts.add(Fraction(rng.randint(0, 6 * count), rng.randint(1, 4)))
    return tuple(sorted(pts))
