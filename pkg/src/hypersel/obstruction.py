"""Divisibility obstruction to regular selection structures.

A constant-score structure of arity n on m elements forces m | C(m,n).
For a prime p dividing m that divisibility always fails: the exact
identity p*C(m,p) = m*C(m-1,p-1) together with C(m-1,p-1) = 1 (mod p)
shows m cannot divide C(m,p).  Note the certificate is about m, not p:
p itself may well divide C(m,p) (p=2, m=4 gives C(4,2)=6), so each
certificate records the residue that actually carries the argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import BudgetExceeded, NotPrime, OutOfRange
from .structures import (
    DEFAULT_BUDGET,
    SelectionStructure,
    ground_range,
    subset_ranks,
)

MAX_TABLE_M = 10**4  # exact-arithmetic comfort zone for table binomials


def is_prime(k: int) -> bool:
    if k < 2:
        return False
    if k < 4:
        return True
    if k % 2 == 0:
        return False
    d = 3
    while d * d <= k:
        if k % d == 0:
            return False
        d += 2
    return True


def regular_score_value(m: int, n: int) -> Optional[int]:
    """C(m,n)/m when integral, else None (then no regular structure exists)."""
    if not 1 <= n <= m:
        raise OutOfRange(f"need 1 <= n <= m, got n={n}, m={m}")
    c = math.comb(m, n)
    return c // m if c % m == 0 else None


@dataclass(frozen=True)
class ObstructionCertificate:
    """Checkable record for one (m, p) divisibility question."""

    m: int
    p: int
    binom: int           # C(m, p), exact
    divisible_by_m: bool  # m | C(m, p)
    lucas_residue: int   # C(m-1, p-1) mod p
    verdict: str         # "regular-impossible" | "regular-unobstructed"

    def identity_holds(self) -> bool:
        """p*C(m,p) == m*C(m-1,p-1), the exact form behind the residue step."""
        return self.p * self.binom == self.m * math.comb(self.m - 1, self.p - 1)


def prime_obstruction_holds(m: int, p: int) -> ObstructionCertificate:
    """Certificate that arity-p regular structures cannot exist on m
    elements (when m does not divide C(m,p)).

    With p | m the verdict is always regular-impossible and the residue
    is always 1; both facts are recomputed, never assumed.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if not 2 <= p <= m:
        raise OutOfRange(f"need 2 <= p <= m, got p={p}, m={m}")
    binom = math.comb(m, p)
    divisible = binom % m == 0
    residue = math.comb(m - 1, p - 1) % p
    verdict = "regular-unobstructed" if divisible else "regular-impossible"
    return ObstructionCertificate(m, p, binom, divisible, residue, verdict)


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a witness search for a regular structure.

    proven=True means the answer is definitive: either a witness was
    found or the space was exhausted (possibly via the divisibility
    shortcut).  proven=False only ever pairs with structure=None and
    means the node budget ran out first.
    """

    structure: Optional[SelectionStructure]
    proven: bool
    nodes: int

    @property
    def status(self) -> str:
        if self.structure is not None:
            return "witness"
        return "proven-none" if self.proven else "budget-exceeded"


def search_regular(m: int, n: int, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Backtracking search for a constant-score structure of arity n on m
    elements, pruning branches where some score overshoots the target or
    can no longer reach it.  Subsets are filled in rank order."""
    target = regular_score_value(m, n)
    if target is None:
        return SearchResult(None, True, 0)
    subs, _ = subset_ranks(m, n)
    count = len(subs)
    # suffix[r][x] = how many subsets of rank >= r contain x
    suffix = [[0] * m for _ in range(count + 1)]
    for r in range(count - 1, -1, -1):
        row = suffix[r + 1][:]
        for x in subs[r]:
            row[x] += 1
        suffix[r] = row
    for x in range(m):
        if suffix[0][x] < target:
            return SearchResult(None, True, 0)
    w = [0] * m
    picks = [0] * count
    nodes = 0

    def extend(r: int) -> Optional[bool]:
        """True = witness found, False = subtree exhausted, None = budget."""
        nonlocal nodes
        if r == count:
            return True
        for x in subs[r]:
            nodes += 1
            if nodes > budget:
                return None
            if w[x] + 1 > target:
                continue
            w[x] += 1
            feasible = all(
                w[y] + suffix[r + 1][y] >= target for y in subs[r]
            )
            if feasible:
                picks[r] = x
                sub = extend(r + 1)
                if sub is not False:
                    w[x] -= 1
                    return sub
            w[x] -= 1
        return False

    outcome = extend(0)
    if outcome is True:
        s = SelectionStructure(ground_range(m), n, tuple(picks))
        return SearchResult(s, True, nodes)
    if outcome is None:
        return SearchResult(None, False, nodes)
    return SearchResult(None, True, nodes)


@dataclass(frozen=True)
class TableRow:
    m: int
    p: int
    binom: int
    divisible: bool
    lucas_residue: int
    search_status: str


def obstruction_table(max_m: int, budget: int = DEFAULT_BUDGET) -> list:
    """One row per pair (m, p) with p prime, p | m, m <= max_m, ordered by
    m then p.  Every row also reruns the witness search, whose
    divisibility shortcut makes it instant here."""
    if not 2 <= max_m <= MAX_TABLE_M:
        raise OutOfRange(f"need 2 <= max_m <= {MAX_TABLE_M}, got {max_m}")
    rows = []
    for m in range(2, max_m + 1):
        for p in range(2, m + 1):
            if not is_prime(p) or m % p != 0:
                continue
            cert = prime_obstruction_holds(m, p)
            search = search_regular(m, p, budget=budget)
            if search.structure is not None:
                raise AssertionError(
                    f"obstructed pair ({m},{p}) produced a witness"
                )
            rows.append(
                TableRow(
                    m=m,
                    p=p,
                    binom=cert.binom,
                    divisible=cert.divisible_by_m,
                    lucas_residue=cert.lucas_residue,
                    search_status=search.status,
                )
            )
    return rows


TABLE_COLUMNS = ("m", "p", "binom", "divisible", "lucas_residue", "search_status")


def table_tsv(rows) -> str:
    """Tab-separated rendering with header row and LF line endings."""
    lines = ["\t".join(TABLE_COLUMNS)]
    for r in rows:
        lines.append(
            "\t".join(
                (
                    str(r.m),
                    str(r.p),
                    str(r.binom),
                    "true" if r.divisible else "false",
                    str(r.lucas_residue),
                    r.search_status,
                )
            )
        )
    return "\n".join(lines) + "\n"
