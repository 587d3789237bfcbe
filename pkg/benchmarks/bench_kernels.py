"""Benchmark the compiled graph kernels against the pure-Python
fallback on the workloads that dominate the experiment runtimes.

Usage: python benchmarks/bench_kernels.py [--sizes 200,500,1000]
"""

import argparse
import time

import numpy as np

from maxsep._kernels import BACKEND, fallback
from maxsep.core import mcs_separate
from maxsep.graphs import GammaClosure, random_tree, random_tree_halfspace_labeling

try:
    from maxsep._kernels import _graphcore as compiled
except ImportError:
    compiled = None


def timeit(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_backend(impl, name, sizes):
    rng = np.random.default_rng(0)
    print(f"--- backend: {name}")
    for n in sizes:
        tree = random_tree(n, seed=3)
        mask = (rng.random(n) < 0.05).astype(np.uint8)
        t_apsp = timeit(lambda: impl.bfs_all_pairs(tree.indptr, tree.indices, n), repeat=1)
        t_steiner = timeit(lambda: impl.tree_steiner(tree.indptr, tree.indices, mask))
        dist = impl.bfs_all_pairs(tree.indptr, tree.indices, n)
        small = min(n, 120)
        sub = random_tree(small, seed=4)
        dsub = impl.bfs_all_pairs(sub.indptr, sub.indices, small)
        msub = (rng.random(small) < 0.1).astype(np.uint8)
        t_gamma = timeit(lambda: impl.gamma_closure(dsub, msub))
        print(
            f"n={n:5d}  apsp {t_apsp * 1e3:8.2f} ms   "
            f"steiner {t_steiner * 1e6:8.1f} us   "
            f"gamma(n={small}) {t_gamma * 1e6:8.1f} us"
        )


def bench_separation(sizes):
    print("--- end-to-end greedy separation on trees (selected backend:", BACKEND + ")")
    for n in sizes:
        tree = random_tree(n, seed=7)
        op = GammaClosure(tree)
        rng = np.random.default_rng(1)
        lr, lb = random_tree_halfspace_labeling(tree, seed=2)
        a = op.ground.set_of(rng.choice(lr.members(), size=min(10, len(lr)), replace=False))
        b = op.ground.set_of(rng.choice(lb.members(), size=min(10, len(lb)), replace=False))
        t = timeit(lambda: mcs_separate(op, a, b, order="random", seed=5))
        print(f"n={n:5d}  mcs_separate {t * 1e3:8.2f} ms")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="200,1000,5000")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    if compiled is not None:
        bench_backend(compiled, "c", sizes)
    else:
        print("compiled extension not built; showing fallback only")
    bench_backend(fallback, "pure", sizes)
    bench_separation(sizes)


if __name__ == "__main__":
    main()
