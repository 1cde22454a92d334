"""Benchmark the compiled tournament kernels against the pure-Python
fallback.

Run from the repository root:

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --full   # adds the 2^21 scan at m=7

Both backends are imported directly, so results do not depend on the
HYPERSEL_PURE environment variable.
"""

import argparse
import time

from hypersel._kernels import _pure

try:
    from hypersel._kernels import _fast
except ImportError:
    _fast = None


def timed(fn, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def bench(label, make_call, repeat=3):
    pure_t, pure_r = timed(make_call(_pure), repeat)
    if _fast is None:
        print(f"{label:<42} pure {pure_t * 1e3:9.2f} ms   (no compiled backend)")
        return
    fast_t, fast_r = timed(make_call(_fast), repeat)
    if pure_r != fast_r:
        raise SystemExit(f"{label}: backend results differ")
    speedup = pure_t / fast_t if fast_t else float("inf")
    print(
        f"{label:<42} pure {pure_t * 1e3:9.2f} ms   "
        f"compiled {fast_t * 1e3:9.2f} ms   x{speedup:6.1f}"
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--full",
        action="store_true",
        help="include the exhaustive m=7 scan (2^21 masks, slow in pure Python)",
    )
    args = parser.parse_args()

    if _fast is None:
        print("compiled backend not built; showing pure timings only\n")

    for m in (5, 6):
        bench(f"regular_masks_exhaustive(m={m})", lambda k, m=m: lambda: k.regular_masks_exhaustive(m))
    if args.full:
        bench("regular_masks_exhaustive(m=7)", lambda k: lambda: k.regular_masks_exhaustive(7), repeat=1)
    for m in (5, 7):
        bench(f"regular_masks_backtracking(m={m})", lambda k, m=m: lambda: k.regular_masks_backtracking(m))
    bench("regular_masks_backtracking(m=9)", lambda k: lambda: k.regular_masks_backtracking(9), repeat=1)

    masks7 = _pure.regular_masks_backtracking(7)
    bench(
        "first_cycle_violation(m=7, 2640 masks)",
        lambda k: lambda: k.first_cycle_violation(7, masks7),
    )
    bench(
        "tournament_scores(m=6, 2^15 masks)",
        lambda k: lambda: [k.tournament_scores(x, 6) for x in range(1 << 15)],
    )


if __name__ == "__main__":
    main()
