"""Time the numba and numpy kernel backends on corpus-sized inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import time

import numpy as np

from noether_forge import _accel
from noether_forge.corpus import numerical_corpus
from noether_forge.kernels import canonical_mask, exact_rank, sumset_mask
from noether_forge.koszul import family_Cp, koszul_dimension


def workloads():
    corpus = numerical_corpus(8)
    rng = np.random.default_rng(0)
    mats = [rng.integers(-2, 3, size=(40, 40)).astype(np.int64) for _ in range(20)]

    def sumsets():
        for S in corpus:
            pts = np.array(S.small_elements)
            sumset_mask(pts, pts, np.array([0]), np.array(S.conductor))

    def canon():
        for S in corpus:
            canonical_mask(np.array(S.small_elements), np.array(S.conductor))

    def ranks():
        for m in mats:
            exact_rank(m)

    def koszul():
        koszul_dimension(family_Cp(3), 2, 2)

    return {"sumset_mask": sumsets, "canonical_mask": canon, "exact_rank 40x40": ranks, "koszul C_3 (2,2)": koszul}


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = ["numpy"] + (["numba"] if _accel.HAVE_NUMBA else [])
    print(f"{'workload':<20}" + "".join(f"{b:>12}" for b in backends))
    for name, fn in workloads().items():
        row = []
        for b in backends:
            with _accel.use_backend(b):
                fn()  # warm up, includes jit compilation
                row.append(best_of(fn, args.repeat))
        print(f"{name:<20}" + "".join(f"{t * 1e3:>10.2f}ms" for t in row))


if __name__ == "__main__":
    main()
