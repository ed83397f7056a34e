"""Compare the compiled degree kernel with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

from torusnef import build_root_system
from torusnef.kernels import compiled_backend, python_backend

CASES = [
    ("A3", (1, 2, 1, 3, 2, 1)),
    ("B3", (3, 2, 3, 1, 2, 3, 1, 2, 1)),
    ("D4", (2, 1, 3, 4, 2, 1, 3, 4, 2, 1)),
    ("A5", (1, 2, 1, 3, 2, 1, 4, 3, 2, 1, 5, 4)),
    ("E6", (1, 3, 4, 2, 5, 4, 3, 1, 6, 5, 4, 2)),
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if compiled_backend is None:
        raise SystemExit("compiled extension not built; reinstall without TORUSNEF_NO_EXT")
    print(f"{'type':<5} {'r':>3} {'curves':>7} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for t, word in CASES:
        rs = build_root_system(t)
        w = [a - 1 for a in word]
        py = python_backend.curve_degree_table(rs.cartan, w)
        cy = compiled_backend.curve_degree_table(rs.cartan, w)
        assert py == cy, f"backends disagree on {t} {word}"
        tp = best_of(lambda: python_backend.curve_degree_table(rs.cartan, w), args.repeat)
        tc = best_of(lambda: compiled_backend.curve_degree_table(rs.cartan, w), args.repeat)
        print(f"{t:<5} {len(word):>3} {len(py[0]):>7} {tp:>10.4f} {tc:>10.4f} {tp / tc:>7.1f}x")


if __name__ == "__main__":
    main()
