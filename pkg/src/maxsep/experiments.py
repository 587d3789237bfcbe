"""Classification studies: vertex labels on random trees and point
labels on hull-separated point clouds.

Both studies share the evaluation protocol: the ground set is split
into two label blocks, a training pair (A, B) is drawn from the
blocks, the greedy separation runs, and the returned sides predict the
labels of the remaining elements. Accuracy counts correct predictions
among the predicted elements; coverage counts how many test elements
received a prediction at all. Training elements are excluded from both
metrics.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import ElementSet, Separated, mcs_separate
from .euclid import AlphaClosure, generate_d2_instance
from .graphs import (
    GammaClosure,
    RatioUnsatisfiable,
    random_tree,
    random_tree_halfspace_labeling,
)

__all__ = [
    "accuracy",
    "coverage",
    "TrialResult",
    "CellResult",
    "run_d1",
    "run_d2",
    "CSV_COLUMNS",
]


def accuracy(
    e1: ElementSet,
    e2: ElementSet,
    h1: ElementSet,
    h2: ElementSet,
    a: ElementSet,
    b: ElementSet,
) -> Optional[float]:
    """Fraction of predicted test elements predicted correctly:
    (|E1 n H'1| + |E2 n H'2|) / |H'1 u H'2| with H'i the returned sides
    restricted to the test elements. None when nothing was predicted
    beyond the training sets (excluded from averages)."""
    if not h1.isdisjoint(h2):
        raise ValueError("prediction sides overlap")
    if not a.issubset(h1) or not b.issubset(h2):
        raise ValueError("training sets must be contained in their sides")
    train = a | b
    hp1 = h1 - train
    hp2 = h2 - train
    denom = len(hp1 | hp2)
    if denom == 0:
        return None
    return (len(e1 & hp1) + len(e2 & hp2)) / denom


def coverage(
    e: ElementSet,
    a: ElementSet,
    b: ElementSet,
    h1: ElementSet,
    h2: ElementSet,
) -> Optional[float]:
    """Fraction of test elements that received a prediction:
    |H'1 u H'2| / |E'| with E' the elements outside the training sets."""
    eprime = e - (a | b)
    if not eprime:
        return None
    covered = (h1 | h2) & eprime
    return len(covered) / len(eprime)


@dataclass(frozen=True)
class TrialResult:
    accuracy: Optional[float]
    coverage: Optional[float]
    closure_calls: int


@dataclass
class CellResult:
    """One aggregated grid cell, matching the CSV schema."""

    experiment: str
    dim_or_size: int
    train_size: int
    trials: int
    mean_accuracy: Optional[float]
    mean_coverage: Optional[float]
    undefined_count: int
    mean_closure_calls: float
    seed: int


CSV_COLUMNS = [
    "experiment",
    "dim_or_size",
    "train_size",
    "trials",
    "mean_accuracy",
    "mean_coverage",
    "undefined_count",
    "mean_closure_calls",
    "seed",
]


def _child_seed(*entropy: int) -> int:
    return int(np.random.SeedSequence(entropy).generate_state(1)[0])


def _split_sizes(total: int, cap_a: int, cap_b: int) -> tuple[int, int]:
    """Even split of the training budget, shifting to the other block
    when one is too small; both sides stay non-empty."""
    if total < 2:
        raise ValueError("training size must be >= 2 (one per class)")
    if total > cap_a + cap_b:
        raise ValueError("training size exceeds the ground set")
    n_a = min(total - total // 2, cap_a)
    n_b = min(total - n_a, cap_b)
    n_a = total - n_b
    if n_a > cap_a or n_a < 1 or n_b < 1:
        raise ValueError("label blocks cannot accommodate the training split")
    return n_a, n_b


def _sample_block(rng: np.random.Generator, block: ElementSet, k: int) -> ElementSet:
    members = block.members()
    pick = rng.choice(len(members), size=k, replace=False)
    return block.ground.set_of(members[i] for i in pick)


def _aggregate(
    experiment: str,
    dim_or_size: int,
    train_size: int,
    trials: Sequence[TrialResult],
    seed: int,
) -> CellResult:
    accs = [t.accuracy for t in trials if t.accuracy is not None]
    covs = [t.coverage for t in trials if t.coverage is not None]
    undefined = sum(1 for t in trials if t.accuracy is None or t.coverage is None)
    return CellResult(
        experiment=experiment,
        dim_or_size=dim_or_size,
        train_size=train_size,
        trials=len(trials),
        mean_accuracy=float(np.mean(accs)) if accs else None,
        mean_coverage=float(np.mean(covs)) if covs else None,
        undefined_count=undefined,
        mean_closure_calls=float(np.mean([t.closure_calls for t in trials])),
        seed=seed,
    )


# --- D1: tree vertex classification ---------------------------------------


def _d1_tree_task(args):
    seed, size, tree_idx, train_sizes, trainsets_per_tree, ratio_bound = args
    tree = None
    for attempt in range(64):
        candidate = random_tree(size, seed=_child_seed(seed, 1, size, tree_idx, attempt))
        try:
            lr, lb = random_tree_halfspace_labeling(
                candidate, seed=_child_seed(seed, 2, size, tree_idx, attempt),
                ratio_bound=ratio_bound,
            )
        except RatioUnsatisfiable:
            continue
        tree = candidate
        break
    if tree is None:
        raise RatioUnsatisfiable(f"no labelable tree of size {size} in 64 attempts")
    op = GammaClosure(tree)
    full = op.ground.full()
    out = []
    for train in train_sizes:
        for j in range(trainsets_per_tree):
            rng = np.random.default_rng(_child_seed(seed, 3, size, tree_idx, train, j))
            n_a, n_b = _split_sizes(train, len(lr), len(lb))
            a = _sample_block(rng, lr, n_a)
            b = _sample_block(rng, lb, n_b)
            res = mcs_separate(op, a, b, order="random",
                               seed=_child_seed(seed, 4, size, tree_idx, train, j))
            assert isinstance(res, Separated)
            cov = coverage(full, a, b, res.h1, res.h2)
            if cov != 1.0:
                raise AssertionError(
                    f"tree run failed to partition: size={size} train={train}"
                )
            acc = accuracy(lr, lb, res.h1, res.h2, a, b)
            out.append((train, TrialResult(acc, cov, res.closure_calls)))
    return size, out


def run_d1(
    tree_sizes: Sequence[int],
    train_sizes: Sequence[int],
    trees_per_size: int = 10,
    trainsets_per_tree: int = 10,
    seed: int = 0,
    ratio_bound: float = 3.0,
    jobs: int = 1,
) -> list[CellResult]:
    """Tree study: random trees, half-space labelings, averaged
    accuracy per (tree size, training size) cell. Coverage is asserted
    to be exactly 1 on every trial (trees always partition)."""
    tasks = [
        (seed, size, t, tuple(train_sizes), trainsets_per_tree, ratio_bound)
        for size in tree_sizes
        for t in range(trees_per_size)
    ]
    per_cell: dict[tuple[int, int], list[TrialResult]] = {}
    for size, results in _run_tasks(_d1_tree_task, tasks, jobs):
        for train, trial in results:
            per_cell.setdefault((size, train), []).append(trial)
    return [
        _aggregate("d1", size, train, trials, seed)
        for (size, train), trials in sorted(per_cell.items())
    ]


# --- D2: point classification ---------------------------------------------


def _d2_instance_task(args):
    seed, dim, inst_idx, train_sizes, n_per_class, margin = args
    points, labels = generate_d2_instance(
        dim, n_per_class, margin=margin, seed=_child_seed(seed, 5, dim, inst_idx)
    )
    ground = points.ground
    pos = ElementSet.from_bool_array(ground, (labels == 1).astype(np.uint8))
    neg = pos.complement()
    op = AlphaClosure(points)
    full = ground.full()
    out = []
    for train in train_sizes:
        rng = np.random.default_rng(_child_seed(seed, 6, dim, inst_idx, train))
        n_a, n_b = _split_sizes(train, len(pos), len(neg))
        a = _sample_block(rng, pos, n_a)
        b = _sample_block(rng, neg, n_b)
        res = mcs_separate(op, a, b, order="random",
                           seed=_child_seed(seed, 7, dim, inst_idx, train))
        assert isinstance(res, Separated)
        acc = accuracy(pos, neg, res.h1, res.h2, a, b)
        cov = coverage(full, a, b, res.h1, res.h2)
        out.append((train, TrialResult(acc, cov, res.closure_calls)))
    return dim, out


def run_d2(
    dims: Sequence[int] = (2, 3, 4),
    train_sizes: Sequence[int] = (10, 20, 50, 100),
    instances_per_dim: int = 50,
    n_per_class: int = 200,
    margin: float = 0.05,
    seed: int = 0,
    jobs: int = 1,
) -> list[CellResult]:
    """Point study: hull-separated classes, averaged accuracy and
    coverage per (dimension, training size) cell."""
    tasks = [
        (seed, dim, i, tuple(train_sizes), n_per_class, margin)
        for dim in dims
        for i in range(instances_per_dim)
    ]
    per_cell: dict[tuple[int, int], list[TrialResult]] = {}
    for dim, results in _run_tasks(_d2_instance_task, tasks, jobs):
        for train, trial in results:
            per_cell.setdefault((dim, train), []).append(trial)
    return [
        _aggregate("d2", dim, train, trials, seed)
        for (dim, train), trials in sorted(per_cell.items())
    ]


def _run_tasks(fn, tasks, jobs):
    """Run tasks serially or in a process pool; per-trial seeds are
    derived from the task parameters, so scheduling never changes
    results."""
    if jobs <= 1 or len(tasks) <= 1:
        for t in tasks:
            yield fn(t)
        return
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(fn, tasks, chunksize=1)
