"""Chain transfers between open families and nice family systems.

One family meets another uniquely when each of its members intersects
exactly one member of the other; the induced index map composes along
chains.  A system is nice when overlapping families always meet
uniquely and all chains between the same endpoints compose to the same
transfer; nice systems with bijective transfers determine a selection
on every covered sample subset.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    BrokenLink,
    NoTransversal,
    NonBijectiveTransfer,
    NotNice,
    PreconditionUnverified,
    SizeMismatch,
)
from .extension import restrict
from .structures import is_regular, subset_ranks
from .verdict import PASS, Verdict, fail
from .vietoris import (
    ModelSpace,
    OpenFamily,
    find_preserving_neighborhoods,
    intersect_nonempty,
    preserves_relations,
    resolution,
)


@dataclass(frozen=True)
class MeetMap:
    """Unique-meet map: member i of source meets exactly member
    mapping[i] of target, and nothing else."""

    source: OpenFamily
    target: OpenFamily
    mapping: tuple
    bijective: bool


def meets_uniquely(u: OpenFamily, v: OpenFamily) -> Optional[MeetMap]:
    """The unique-meet map u -> v, or None when some member of u meets
    zero or several members of v."""
    if u.size != v.size:
        raise SizeMismatch(f"family sizes differ: {u.size} vs {v.size}")
    mapping = []
    for a in u.members:
        hits = [j for j, b in enumerate(v.members) if a.intersects(b)]
        if len(hits) != 1:
            return None
        mapping.append(hits[0])
    return MeetMap(u, v, tuple(mapping), len(set(mapping)) == u.size)


@dataclass(frozen=True)
class ChainRec:
    """A sequence of families with consecutive unique-meet links."""

    families: tuple
    links: tuple


@dataclass(frozen=True)
class TransferMap:
    """Composition of a chain's links."""

    source: OpenFamily
    target: OpenFamily
    mapping: tuple
    bijective: bool


def make_chain(families: Sequence[OpenFamily]) -> ChainRec:
    """Build the chain record, raising BrokenLink at the first
    consecutive pair without the unique-meet property."""
    fams = tuple(families)
    if not fams:
        raise ValueError("a chain needs at least one family")
    links = []
    for i in range(len(fams) - 1):
        link = meets_uniquely(fams[i], fams[i + 1])
        if link is None:
            raise BrokenLink(f"families {i} and {i + 1} do not meet uniquely")
        links.append(link)
    return ChainRec(fams, tuple(links))


def compose_chain(chain: ChainRec) -> TransferMap:
    """Composite transfer from the first family to the last; identity
    for the one-family chain."""
    size = chain.families[0].size
    mapping = tuple(range(size))
    bijective = True
    for link in chain.links:
        mapping = tuple(link.mapping[i] for i in mapping)
        bijective = bijective and link.bijective
    return TransferMap(chain.families[0], chain.families[-1], mapping, bijective)


@dataclass(frozen=True)
class FamilySystem:
    """Finite list of equal-size open families over one sample model."""

    families: tuple
    model: ModelSpace

    def __post_init__(self):
        sizes = {f.size for f in self.families}
        if len(sizes) > 1:
            raise SizeMismatch(f"family sizes differ: {sorted(sizes)}")

    @property
    def arity(self) -> int:
        return self.families[0].size if self.families else 0


def _edges(system: FamilySystem) -> dict:
    """Directed unique-meet edges between distinct families."""
    out = {}
    fams = system.families
    for i in range(len(fams)):
        for j in range(len(fams)):
            if i == j:
                continue
            link = meets_uniquely(fams[i], fams[j])
            if link is not None:
                out[(i, j)] = link.mapping
    return out


def chain_classes(system: FamilySystem) -> list:
    """Connected components of the unique-meet graph (edges taken
    regardless of direction), each a sorted list of family indices."""
    n = len(system.families)
    edges = _edges(system)
    neighbors = {i: set() for i in range(n)}
    for (i, j) in edges:
        neighbors[i].add(j)
        neighbors[j].add(i)
    seen: set = set()
    comps = []
    for root in range(n):
        if root in seen:
            continue
        comp = []
        stack = [root]
        seen.add(root)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in neighbors[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _labels_from(
    root: int, size: int, edges: dict, n_families: int
):
    """Transfer labels L with L[root] = identity, propagated along
    directed edges; returns (labels, conflict edge or None).

    A conflict means two chains from root to the same family compose
    differently, which refutes path independence outright.
    """
    labels: dict = {root: tuple(range(size))}
    queue = [root]
    while queue:
        u = queue.pop(0)
        for v in range(n_families):
            if v == u or (u, v) not in edges:
                continue
            gamma = edges[(u, v)]
            cand = tuple(gamma[x] for x in labels[u])
            if v not in labels:
                labels[v] = cand
                queue.append(v)
            elif labels[v] != cand:
                return labels, (u, v)
    # re-check every edge inside the labeled set (BFS order may have
    # assigned both endpoints before walking the edge)
    for (u, v), gamma in edges.items():
        if u in labels and v in labels:
            if tuple(gamma[x] for x in labels[u]) != labels[v]:
                return labels, (u, v)
    return labels, None


def is_nice(system: FamilySystem) -> Verdict:
    """Both niceness conditions.

    1. Families with intersecting Vietoris opens meet uniquely (checked
       for every ordered pair).
    2. All chains between the same endpoints compose to the same
       transfer.  Checked by consistent labeling: for every family as
       root, propagate transfers outward along unique-meet edges and
       flag any edge that disagrees with the labels.  Rooting at every
       family keeps the check exact even when maps are not invertible
       (the root label is the identity, so no inversion is needed).

    Witnesses: ("overlap-without-unique-meet", i, j) or
    ("transfer-conflict", root, (u, v)).
    """
    fams = system.families
    n = len(fams)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if intersect_nonempty(fams[i], fams[j]):
                if meets_uniquely(fams[i], fams[j]) is None:
                    return fail(("overlap-without-unique-meet", i, j))
    if n == 0:
        return PASS
    size = system.arity
    edges = _edges(system)
    for root in range(n):
        _, conflict = _labels_from(root, size, edges, n)
        if conflict is not None:
            return fail(("transfer-conflict", root, conflict))
    return PASS


def _lex_key(fam: OpenFamily) -> tuple:
    return tuple((u.lo, u.hi) for u in fam.members)


@dataclass(frozen=True)
class BuiltSelection:
    """Classwise selection assembled from a nice system.

    values maps each covered sample subset (tuple sorted ascending) to
    its selected point; uncovered lists the subsets in no family's
    Vietoris open: out of cover, not an error.
    """

    values: dict
    uncovered: tuple
    bases: tuple  # (family index, member index) per component
    components: tuple


def build_selection_from_nice(
    system: FamilySystem, bases: Optional[dict] = None
) -> BuiltSelection:
    """Selection on covered sample m-subsets from a nice system.

    Per chain component a base (family, member) is fixed (default the
    lexicographically least family and its first member) and every
    family receives the composed transfer from the base; a covered
    subset selects its point inside the transferred member.  All
    transfers must be bijective.
    """
    verdict = is_nice(system)
    if not verdict:
        raise NotNice(f"system is not nice: {verdict.witness}")
    fams = system.families
    model = system.model
    m = system.arity
    comps = chain_classes(system)
    edges = _edges(system)
    chosen_bases = []
    transfers: dict = {}
    for ci, comp in enumerate(comps):
        if bases is not None and ci in bases:
            base_f, base_m = bases[ci]
            if base_f not in comp:
                raise ValueError(f"base family {base_f} not in component {comp}")
        else:
            base_f = min(comp, key=lambda i: _lex_key(fams[i]))
            base_m = 0
        if not 0 <= base_m < m:
            raise ValueError(f"base member {base_m} out of range")
        chosen_bases.append((base_f, base_m))
        labels, conflict = _labels_from(base_f, m, edges, len(fams))
        assert conflict is None, "niceness verified but labeling conflicted"
        for v in comp:
            if v not in labels:
                raise NonBijectiveTransfer(
                    f"family {v} not reachable from base {base_f} by unique-meet links"
                )
            if len(set(labels[v])) != m:
                raise NonBijectiveTransfer(
                    f"transfer from {base_f} to {v} is not bijective"
                )
            transfers[v] = labels[v]
    values: dict = {}
    uncovered = []
    subs, _ = subset_ranks(model.size, m) if m <= model.size else ((), {})
    for s in subs:
        pts = tuple(model.points[i] for i in s)
        value = None
        hit = False
        for ci, comp in enumerate(comps):
            base_f, base_m = chosen_bases[ci]
            for v in comp:
                fam = fams[v]
                placement = _placement(fam, pts)
                if placement is None:
                    continue
                hit = True
                target_member = transfers[v][base_m]
                point = placement[target_member]
                if value is None:
                    value = point
                else:
                    assert value == point, (
                        "covering families disagree despite niceness"
                    )
        if hit:
            values[pts] = value
        else:
            uncovered.append(pts)
    return BuiltSelection(
        values, tuple(uncovered), tuple(chosen_bases), tuple(tuple(c) for c in comps)
    )


def _placement(fam: OpenFamily, pts: tuple) -> Optional[tuple]:
    """If pts lies in the Vietoris open of fam, the tuple whose i-th
    entry is the unique point inside member i; else None."""
    placement = []
    used = 0
    for u in fam.members:
        inside = [p for p in pts if u.contains(p)]
        if len(inside) != 1:
            return None
        placement.append(inside[0])
        used += 1
    if len(set(placement)) != len(pts):
        return None
    return tuple(placement)


def covers(fam: OpenFamily, pts: tuple) -> bool:
    return _placement(fam, pts) is not None


def derive_nice_family(model: ModelSpace, n: int) -> FamilySystem:
    """Preserving neighborhood families around every sampled (n+1)-set
    whose pair restriction is regular (n even, selection total up to
    n+1).  Duplicates collapse; order follows subset rank.

    Neighborhood radii are capped at the model resolution so members of
    different families either coincide or are disjoint; that is what
    makes the result nice regardless of how the regular sets interleave.
    """
    if n < 2 or n % 2 != 0:
        raise ValueError(f"need even n >= 2, got {n}")
    m = n + 1
    sel = model.selection
    if not (sel.admits(2) and sel.admits(m)):
        raise ValueError(f"selection must admit arities 2 and {m}")
    if m > model.size:
        raise ValueError(f"model has fewer than {m} points")
    fams = []
    seen = set()
    subs, _ = subset_ranks(model.size, m)
    arities = tuple(i for i in range(1, m + 1) if sel.admits(i))
    cap = resolution(model)
    for s in subs:
        pts = tuple(model.points[i] for i in s)
        if not is_regular(restrict(sel, pts, 2)):
            continue
        fam = find_preserving_neighborhoods(model, pts, arities, max_radius=cap)
        key = _lex_key(fam)
        if key not in seen:
            seen.add(key)
            fams.append(fam)
    return FamilySystem(tuple(fams), model)


def regular_class_cover_check(system: FamilySystem, n: int) -> Verdict:
    """Sampled (n+1)-sets are covered by some family's Vietoris open
    exactly when their pair restriction is regular.  Witness is the
    first offending point tuple."""
    model = system.model
    m = n + 1
    sel = model.selection
    if not (sel.admits(2) and sel.admits(m)):
        raise ValueError(f"selection must admit arities 2 and {m}")
    subs, _ = subset_ranks(model.size, m)
    for s in subs:
        pts = tuple(model.points[i] for i in s)
        covered = any(covers(f, pts) for f in system.families)
        regular = is_regular(restrict(sel, pts, 2))
        if covered != regular:
            return fail(pts)
    return PASS


def overlap_unique_meet_check(
    model: ModelSpace, u: OpenFamily, v: OpenFamily, n: int
) -> bool:
    """Overlapping implies unique meets, under the ambient hypotheses
    that both families preserve relations (arities up to n+1) and both
    covers stay inside the sampled regular class.

    The hypotheses are verified first and PreconditionUnverified is
    raised when they cannot be established; a False return therefore
    marks a counterexample candidate whose real defect lies upstream.
    """
    m = n + 1
    sel = model.selection
    if not (sel.admits(2) and sel.admits(m)):
        raise PreconditionUnverified(f"selection must admit arities 2 and {m}")
    if u.size != m or v.size != m:
        raise PreconditionUnverified(f"families must have size {m}")
    arities = [i for i in range(1, m + 1) if sel.admits(i)]
    for fam in (u, v):
        try:
            for i in arities:
                if not preserves_relations(model, fam, i):
                    raise PreconditionUnverified(
                        f"family does not preserve arity-{i} relations"
                    )
        except NoTransversal as exc:
            raise PreconditionUnverified(str(exc)) from exc
        subs, _ = subset_ranks(model.size, m)
        for s in subs:
            pts = tuple(model.points[i] for i in s)
            if covers(fam, pts) and not is_regular(restrict(sel, pts, 2)):
                raise PreconditionUnverified(
                    f"cover contains the non-regular sample {pts}"
                )
    if not intersect_nonempty(u, v):
        return True
    return meets_uniquely(u, v) is not None
