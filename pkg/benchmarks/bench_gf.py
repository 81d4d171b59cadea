"""Time the compiled mod-p kernels against the pure-Python fallback.

Runs matmul and rref on seeded random matrices at several sizes, checks
that both backends return bit-identical results, and prints the speedup.

    python3 benchmarks/bench_gf.py [--seed N] [--repeats N] [--char P]
"""

from __future__ import annotations

import argparse
import random
from time import perf_counter

from barmatch import _gfpure

try:
    from barmatch import _gfcore
except ImportError:
    _gfcore = None

SIZES = (8, 16, 32, 64, 128)


def random_flat(rng: random.Random, rows: int, cols: int, p: int) -> list[int]:
    return [rng.randrange(p) for _ in range(rows * cols)]


def best_of(repeats: int, fn, *args) -> float:
    best = float("inf")
    for _ in range(repeats):
        t0 = perf_counter()
        fn(*args)
        best = min(best, perf_counter() - t0)
    return best


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--char", type=int, default=2, help="field characteristic")
    args = ap.parse_args()

    if _gfcore is None:
        print("compiled backend unavailable; nothing to compare")
        return 1

    rng = random.Random(args.seed)
    p = args.char
    print(f"GF({p}), best of {args.repeats}, times in ms")
    print(f"{'op':>10} {'size':>9} {'compiled':>10} {'pure':>10} {'speedup':>8}")
    for n in SIZES:
        a = random_flat(rng, n, n, p)
        b = random_flat(rng, n, n, p)
        assert _gfcore.matmul(n, n, n, a, b, p) == _gfpure.matmul(n, n, n, a, b, p)
        assert _gfcore.rref(n, n, list(a), p) == _gfpure.rref(n, n, list(a), p)
        for op, fast, slow, argv in (
            ("matmul", _gfcore.matmul, _gfpure.matmul, (n, n, n, a, b, p)),
            ("rref", _gfcore.rref, _gfpure.rref, (n, n, list(a), p)),
        ):
            tc = best_of(args.repeats, fast, *argv)
            tp = best_of(args.repeats, slow, *argv)
            print(
                f"{op:>10} {n:>4}x{n:<4} {tc * 1e3:>10.3f} {tp * 1e3:>10.3f}"
                f" {tp / tc:>7.1f}x"
            )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
