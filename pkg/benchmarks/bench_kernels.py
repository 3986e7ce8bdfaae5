"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--n 200000] [--repeat 3]
"""

import argparse
import time

import numpy as np

from nalattice import _kernels_py as python_impl
from nalattice import kernels
from nalattice.verify import uniform_integral_samples


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return min(times), result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    compiled = kernels.compiled_impl
    if compiled is None:
        print("compiled extension not available; build it with `python3 setup.py build_ext --inplace`")
        return

    p, N = 3, 25
    B = [[1, 0], [1, 3]]
    Z = uniform_integral_samples(p, N, args.n, 2, seed=1)
    cases = [
        (f"valuation_counts n={args.n} p={p} N={N}",
         lambda: compiled.valuation_counts(B, Z, p, N),
         lambda: python_impl.valuation_counts(B, Z, p, N)),
    ]
    for p, M, gens in ((2, 7, [[1, 2, 0], [0, 4, 6], [0, 0, 8]]), (3, 4, [[1, 3, 0], [0, 9, 3], [0, 0, 27]])):
        mod = p**M
        cases.append((f"subgroup_elements p={p} M={M} d=3",
                      lambda g=gens, m=mod: compiled.subgroup_elements(g, m, 3),
                      lambda g=gens, m=mod: python_impl.subgroup_elements(g, m, 3)))

    print(f"{'kernel':45s} {'cython':>10s} {'python':>10s} {'speedup':>8s}")
    for name, fast, slow in cases:
        tf, rf = best_of(fast, args.repeat)
        ts, rs = best_of(slow, args.repeat)
        assert np.array_equal(rf, rs), name
        print(f"{name:45s} {tf:10.4f} {ts:10.4f} {ts / tf:8.1f}x")


if __name__ == "__main__":
    main()
