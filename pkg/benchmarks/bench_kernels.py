"""Time the compiled partition kernels against the pure-Python ones.

    python benchmarks/bench_kernels.py [--repeat N] [--size N]

Both backends get identical inputs; results are checked for agreement
before anything is timed.
"""

from __future__ import annotations

import argparse
import random
import sys
import timeit

from sigmalattice import _pykernels


def _labels(rng: random.Random, n: int, k: int) -> tuple[int, ...]:
    return _pykernels.canonical(rng.randrange(k) for _ in range(n))


def cases(size: int, seed: int = 0):
    rng = random.Random(seed)
    masses = tuple(rng.randint(1, 9) for _ in range(size))
    total = sum(masses)
    a = _labels(rng, size, 8)
    b = _labels(rng, size, 8)
    c = _labels(rng, size, 4)
    fine = _pykernels.join_labels(a, b)
    # a small ambient field for the complement scan: 2x2x2 uniform signs
    z = tuple(range(8))
    x = (0, 0, 0, 0, 1, 1, 1, 1)
    return {
        "canonical": (list(reversed(a)),),
        "join_labels": (a, b),
        "meet_labels": (a, b),
        "coarser": (a, fine),
        "independent": (a, b, masses, total),
        "cond_independent": (a, b, c, masses),
        "complement_scan": (x, z, (1,) * 8, 8),
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=200)
    ap.add_argument("--size", type=int, default=512, help="support size of the random fields")
    args = ap.parse_args(argv)

    try:
        from sigmalattice import _ckernels
    except ImportError:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1

    print(f"{'kernel':<18} {'python us':>10} {'cython us':>10} {'speedup':>8}")
    for name, args_ in cases(args.size).items():
        py, cy = getattr(_pykernels, name), getattr(_ckernels, name)
        if py(*args_) != cy(*args_):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        t_py = min(timeit.repeat(lambda: py(*args_), number=args.repeat, repeat=3)) / args.repeat
        t_cy = min(timeit.repeat(lambda: cy(*args_), number=args.repeat, repeat=3)) / args.repeat
        print(f"{name:<18} {t_py * 1e6:>10.1f} {t_cy * 1e6:>10.1f} {t_py / t_cy:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
