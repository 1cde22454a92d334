"""Total selection structures on finite ground sets.

A selection structure of arity n on a ground set X assigns to every
n-subset of X one of its own elements.  Arity 2 gives tournaments; the
score of an element counts the subsets that pick it, and constant-score
structures are called regular.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Hashable, Iterable, Iterator, Mapping, Optional

from . import _kernels
from .errors import (
    ArityMismatch,
    BudgetExceeded,
    ChoiceOutsideSubset,
    DuplicateLabel,
    EvenGround,
    MissingSubset,
    NotArityTwo,
    NotRegular,
    SizeMismatch,
)
from .verdict import PASS, Verdict, fail

Label = Hashable

DEFAULT_BUDGET = 10**8  # table cells touched by an enumeration


@lru_cache(maxsize=None)
def subset_ranks(m: int, n: int):
    """(tuple of index n-subsets in rank order, dict subset -> rank)."""
    subs = tuple(combinations(range(m), n))
    return subs, {s: r for r, s in enumerate(subs)}


@dataclass(frozen=True)
class GroundSet:
    """Finite ordered carrier; the label order fixes subset ranks."""

    labels: tuple

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise DuplicateLabel(f"repeated labels in {self.labels!r}")

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, label: Label) -> int:
        return self.labels.index(label)

    def __iter__(self):
        return iter(self.labels)

    def __len__(self) -> int:
        return len(self.labels)


def ground_range(m: int) -> GroundSet:
    return GroundSet(tuple(range(m)))


@dataclass(frozen=True)
class SelectionStructure:
    """Total choice function on the n-subsets of a ground set.

    picks[r] is the ground index chosen from the rank-r subset, ranks
    following the lexicographic order of sorted index tuples.
    """

    ground: GroundSet
    n: int
    picks: tuple

    def __post_init__(self):
        m = self.ground.size
        if not 1 <= self.n <= m:
            raise ValueError(f"arity {self.n} out of range for ground of size {m}")
        subs, _ = subset_ranks(m, self.n)
        if len(self.picks) != len(subs):
            raise MissingSubset(
                f"expected {len(subs)} choices, got {len(self.picks)}"
            )
        for s, p in zip(subs, self.picks):
            if p not in s:
                raise ChoiceOutsideSubset(f"subset {s} cannot pick index {p}")

    @property
    def size(self) -> int:
        return self.ground.size

    def subset_count(self) -> int:
        return len(self.picks)

    def choose_indices(self, subset: tuple) -> int:
        _, rank = subset_ranks(self.size, self.n)
        return self.picks[rank[subset]]

    def choose(self, labels: Iterable[Label]) -> Label:
        idx = tuple(sorted(self.ground.index(x) for x in labels))
        return self.ground.labels[self.choose_indices(idx)]

    def subsets(self) -> Iterator[tuple]:
        subs, _ = subset_ranks(self.size, self.n)
        for s in subs:
            yield tuple(self.ground.labels[i] for i in s)


def make_selection(
    ground: GroundSet, n: int, table: Mapping
) -> SelectionStructure:
    """Build a structure from a mapping {n-subset of labels: chosen label}.

    The table must cover exactly the n-subsets of the ground set.
    """
    m = ground.size
    if not 1 <= n <= m:
        raise ValueError(f"arity {n} out of range for ground of size {m}")
    normalized = {frozenset(k): v for k, v in table.items()}
    if len(normalized) != len(table):
        raise MissingSubset("table keys collapse when read as sets")
    subs, _ = subset_ranks(m, n)
    picks = []
    for s in subs:
        key = frozenset(ground.labels[i] for i in s)
        if key not in normalized:
            raise MissingSubset(f"no choice for subset {sorted(key, key=ground.index)}")
        v = normalized[key]
        if v not in key:
            raise ChoiceOutsideSubset(f"{v!r} not in subset {sorted(key, key=ground.index)}")
        picks.append(ground.index(v))
    if len(normalized) != len(subs):
        raise MissingSubset("table has entries that are not n-subsets of the ground")
    return SelectionStructure(ground, n, tuple(picks))


def selection_from_order(ground: GroundSet, n: int, rule: str) -> SelectionStructure:
    """Structure picking the least ("min") or greatest ("max") index."""
    if rule not in ("min", "max"):
        raise ValueError(f"rule must be 'min' or 'max', got {rule!r}")
    subs, _ = subset_ranks(ground.size, n)
    picks = tuple(s[0] if rule == "min" else s[-1] for s in subs)
    return SelectionStructure(ground, n, picks)


def rotational_tournament(m: int) -> SelectionStructure:
    """Tournament on 0..m-1 (m odd) where {i,j}, i<j, picks j iff
    (j - i) mod m <= (m-1)/2.  Constant score (m-1)/2."""
    if m % 2 == 0:
        raise EvenGround(f"rotational tournament needs odd m, got {m}")
    if m < 3:
        raise ValueError(f"rotational tournament needs m >= 3, got {m}")
    half = (m - 1) // 2
    subs, _ = subset_ranks(m, 2)
    picks = tuple(j if (j - i) % m <= half else i for i, j in subs)
    return SelectionStructure(ground_range(m), 2, picks)


@dataclass(frozen=True, eq=True)
class ScoreProfile:
    """Scores per label plus the level classes {label: score == k}."""

    scores: dict
    classes: dict

    def total(self) -> int:
        return sum(self.scores.values())


def score_vector(s: SelectionStructure) -> tuple:
    """Scores by ground index."""
    w = [0] * s.size
    for p in s.picks:
        w[p] += 1
    return tuple(w)


def score(s: SelectionStructure) -> ScoreProfile:
    w = score_vector(s)
    scores = {s.ground.labels[i]: w[i] for i in range(s.size)}
    classes: dict = {}
    for i, k in enumerate(w):
        classes.setdefault(k, []).append(s.ground.labels[i])
    return ScoreProfile(scores, {k: frozenset(v) for k, v in classes.items()})


def is_regular(s: SelectionStructure) -> bool:
    return len(set(score_vector(s))) <= 1


def check_cycle_property(s: SelectionStructure) -> Verdict:
    """For a regular tournament: whenever pair {x,y} picks y, some z has
    {y,z} picking z and {z,x} picking x.  Witness on violation is (x,y).

    The counting argument guaranteeing this needs constant scores, so
    non-regular or non-pair input is rejected rather than answered.
    """
    if s.n != 2:
        raise NotArityTwo(f"cycle property is about tournaments, arity {s.n} given")
    if not is_regular(s):
        raise NotRegular("cycle property requires a constant-score tournament")
    labels = s.ground.labels
    m = s.size
    for xi in range(m):
        for yi in range(m):
            if yi == xi:
                continue
            pair = (min(xi, yi), max(xi, yi))
            if s.choose_indices(pair) != yi:
                continue
            for zi in range(m):
                if zi in (xi, yi):
                    continue
                yz = (min(yi, zi), max(yi, zi))
                zx = (min(zi, xi), max(zi, xi))
                if s.choose_indices(yz) == zi and s.choose_indices(zx) == xi:
                    break
            else:
                return fail((labels[xi], labels[yi]))
    return PASS


@dataclass(frozen=True)
class IsoMap:
    """Bijection source -> target, stored by source label order."""

    source: GroundSet
    target: GroundSet
    images: tuple  # images[i] is the image of source.labels[i]

    def __post_init__(self):
        if self.source.size != self.target.size:
            raise SizeMismatch("isomorphism endpoints differ in size")
        if set(self.images) != set(self.target.labels):
            raise ValueError("images do not form a bijection onto the target")

    def apply(self, label: Label) -> Label:
        return self.images[self.source.index(label)]

    def apply_indices(self) -> tuple:
        """Index permutation p with p[source index] = target index."""
        return tuple(self.target.index(x) for x in self.images)

    def inverse(self) -> "IsoMap":
        inv = [None] * self.source.size
        for i, img in enumerate(self.images):
            inv[self.target.index(img)] = self.source.labels[i]
        return IsoMap(self.target, self.source, tuple(inv))

    def compose(self, then: "IsoMap") -> "IsoMap":
        """self: A -> B composed with then: B -> C, giving A -> C."""
        if self.target != then.source:
            raise SizeMismatch("composition endpoints do not match")
        return IsoMap(self.source, then.target, tuple(then.apply(x) for x in self.images))


def is_isomorphism(s: SelectionStructure, t: SelectionStructure, phi: IsoMap) -> bool:
    """True iff phi carries every choice of s onto the choice of t."""
    if s.size != t.size:
        raise SizeMismatch(f"ground sizes differ: {s.size} vs {t.size}")
    if s.n != t.n:
        raise ArityMismatch(f"arities differ: {s.n} vs {t.n}")
    if phi.source != s.ground or phi.target != t.ground:
        raise SizeMismatch("map endpoints do not match the structures")
    p = phi.apply_indices()
    subs, rank = subset_ranks(s.size, s.n)
    for r, sub in enumerate(subs):
        image = tuple(sorted(p[i] for i in sub))
        if t.picks[rank[image]] != p[s.picks[r]]:
            return False
    return True


def apply_iso(s: SelectionStructure, phi: IsoMap) -> SelectionStructure:
    """The relabeled structure on phi's target ground."""
    if phi.source != s.ground:
        raise SizeMismatch("map source does not match the structure")
    p = phi.apply_indices()
    inv = [0] * len(p)
    for i, pi in enumerate(p):
        inv[pi] = i
    subs, rank = subset_ranks(s.size, s.n)
    picks = [0] * len(subs)
    for r, sub in enumerate(subs):
        src = tuple(sorted(inv[j] for j in sub))
        picks[r] = p[s.picks[rank[src]]]
    return SelectionStructure(phi.target, s.n, tuple(picks))


def _score_blocks(w: tuple):
    """Ground indices grouped by score, ascending; blocks give the only
    relabelings that can sort the score sequence."""
    order: dict = {}
    for i, v in enumerate(w):
        order.setdefault(v, []).append(i)
    return [order[v] for v in sorted(order)]


def canonical_candidates(s: SelectionStructure) -> int:
    """Number of relabelings the canonicalization has to inspect."""
    return math.prod(math.factorial(len(b)) for b in _score_blocks(score_vector(s)))


def canonical_form(s: SelectionStructure):
    """Canonical representative on the ground 0..m-1 plus the certifying map.

    Minimizes the choice tuple over all relabelings that sort scores
    ascending; the score multiset is an isomorphism invariant, so the
    result is constant on isomorphism classes and idempotent.
    """
    m, n = s.size, s.n
    subs, rank = subset_ranks(m, n)
    blocks = _score_blocks(score_vector(s))
    starts = []
    pos = 0
    for b in blocks:
        starts.append(pos)
        pos += len(b)
    best: Optional[tuple] = None
    best_sigma: Optional[tuple] = None
    for assignment in product(*(permutations(b) for b in blocks)):
        sigma = [0] * m  # old index -> new index
        for block_perm, start in zip(assignment, starts):
            for offset, old in enumerate(block_perm):
                sigma[old] = start + offset
        inv = [0] * m
        for old, new in enumerate(sigma):
            inv[new] = old
        picks = [0] * len(subs)
        for r, sub in enumerate(subs):
            src = tuple(sorted(inv[j] for j in sub))
            picks[r] = sigma[s.picks[rank[src]]]
        enc = tuple(picks)
        if best is None or enc < best:
            best = enc
            best_sigma = tuple(sigma)
    assert best is not None and best_sigma is not None
    canon = SelectionStructure(ground_range(m), n, best)
    iso = IsoMap(s.ground, canon.ground, best_sigma)
    return canon, iso


def are_isomorphic(
    s: SelectionStructure, t: SelectionStructure
) -> Optional[IsoMap]:
    """An isomorphism s -> t when one exists, else None."""
    if s.size != t.size or s.n != t.n:
        return None
    cs, ms = canonical_form(s)
    ct, mt = canonical_form(t)
    if cs.picks != ct.picks:
        return None
    phi = ms.compose(mt.inverse())
    assert is_isomorphism(s, t, phi)
    return phi


def enumerate_selections(
    m: int,
    n: int,
    up_to_iso: bool = False,
    budget: int = DEFAULT_BUDGET,
    start: int = 0,
    stop: Optional[int] = None,
) -> Iterator[SelectionStructure]:
    """Stream every structure of arity n on the ground 0..m-1.

    Order is subset-rank-major, ground-order-minor: the rank-0 choice is
    the most significant digit and candidates within a subset follow the
    ground order.  start/stop slice that order, so workers can split a
    stream by index range.  Cost is metered in table cells; exceeding
    the budget raises BudgetExceeded (also eagerly when the labeled
    space is plainly too large).
    """
    if not 1 <= n <= m:
        raise ValueError(f"arity {n} out of range for ground of size {m}")
    subs, _ = subset_ranks(m, n)
    count = len(subs)
    total = n**count
    lo = start
    hi = total if stop is None else min(stop, total)
    span = max(hi - lo, 0)
    if span * count > budget:
        raise BudgetExceeded(
            f"{span} structures x {count} cells exceed budget {budget}"
        )
    ground = ground_range(m)

    def decode(idx: int) -> tuple:
        digits = []
        for _ in range(count):
            idx, d = divmod(idx, n)
            digits.append(d)
        digits.reverse()
        return tuple(subs[r][d] for r, d in enumerate(digits))

    def stream() -> Iterator[SelectionStructure]:
        cells = 0
        seen: set = set()
        for idx in range(lo, hi):
            picks = decode(idx)
            s = SelectionStructure(ground, n, picks)
            cells += count
            if not up_to_iso:
                if cells > budget:
                    raise BudgetExceeded(f"budget {budget} exhausted mid-stream")
                yield s
                continue
            cells += canonical_candidates(s) * count
            if cells > budget:
                raise BudgetExceeded(f"budget {budget} exhausted mid-stream")
            canon, _ = canonical_form(s)
            if canon.picks not in seen:
                seen.add(canon.picks)
                yield canon

    return stream()


# -- regular tournament helpers backed by the kernels ----------------------


def tournament_from_mask(mask: int, m: int) -> SelectionStructure:
    """Unpack a pair-bit mask (set bit picks the larger endpoint)."""
    subs, _ = subset_ranks(m, 2)
    picks = tuple(
        j if (mask >> b) & 1 else i for b, (i, j) in enumerate(subs)
    )
    return SelectionStructure(ground_range(m), 2, picks)


def mask_from_tournament(s: SelectionStructure) -> int:
    if s.n != 2:
        raise NotArityTwo(f"mask packing needs arity 2, got {s.n}")
    subs, _ = subset_ranks(s.size, 2)
    mask = 0
    for b, (i, j) in enumerate(subs):
        if s.picks[b] == j:
            mask |= 1 << b
    return mask


def regular_tournaments(m: int, exhaustive: bool = False) -> list:
    """Every regular tournament on 0..m-1, as structures.

    exhaustive=True scans all 2^C(m,2) masks; the default uses the
    pruned row search.  Both orders are ascending by mask.
    """
    masks = (
        _kernels.regular_masks_exhaustive(m)
        if exhaustive
        else _kernels.regular_masks_backtracking(m)
    )
    return [tournament_from_mask(x, m) for x in masks]


def count_regular_tournaments_exhaustive(m: int) -> int:
    return len(_kernels.regular_masks_exhaustive(m))
