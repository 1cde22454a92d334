"""Boolean check results that can carry a refutation witness."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decidable check.

    Truthiness follows ``ok`` so verdicts drop into plain boolean
    contexts; ``witness`` is populated exactly when ``ok`` is False and
    identifies the offending object (pair, subset, edge, ...).
    """

    ok: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok


PASS = Verdict(True)


def fail(witness: Any) -> Verdict:
    return Verdict(False, witness)
