"""Kernel selection: compiled extension when available, else pure Python.

Set HYPERSEL_PURE=1 in the environment to force the pure backend (used
by the benchmark and by tests that compare the two implementations).
"""

import os

if os.environ.get("HYPERSEL_PURE"):
    from . import _pure as _impl

    BACKEND = "pure"
else:
    try:
        from . import _fast as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _pure as _impl

        BACKEND = "pure"

MAX_M = _impl.MAX_M
tournament_scores = _impl.tournament_scores
regular_masks_exhaustive = _impl.regular_masks_exhaustive
regular_masks_backtracking = _impl.regular_masks_backtracking
first_cycle_violation = _impl.first_cycle_violation

__all__ = [
    "BACKEND",
    "MAX_M",
    "tournament_scores",
    "regular_masks_exhaustive",
    "regular_masks_backtracking",
    "first_cycle_violation",
]
