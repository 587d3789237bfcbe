"""Exhaustive verification oracles for small ground sets.

Everything here enumerates the full closure system, so sizes are
capped (defaults 16 for enumeration, 12 for Kakutani checks). The
oracles are deliberately independent of the greedy algorithms they
validate: they work from the raw fixed-point family.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import (
    ElementSet,
    SeparationOutcome,
    Separated,
    mcs_separate,
    random_subset,
)

__all__ = [
    "SizeBoundExceeded",
    "enumerate_closed_sets",
    "half_spaces",
    "brute_force_maximal_separations",
    "KakutaniVerdict",
    "brute_force_kakutani",
    "PartitionCharacterizationReport",
    "check_partition_characterization",
]


class SizeBoundExceeded(ValueError):
    """Ground set too large for exhaustive enumeration."""


def _check_bound(op, max_size: int, what: str) -> int:
    n = op.ground.size
    if n > max_size:
        raise SizeBoundExceeded(
            f"{what} enumerates 2^|E| subsets; |E|={n} exceeds the bound {max_size}"
        )
    return n


def enumerate_closed_sets(op, max_size: int = 16) -> list[ElementSet]:
    """All fixed points of the operator, by closing every subset."""
    _check_bound(op, max_size, "enumerate_closed_sets")
    ground = op.ground
    seen = set()
    for xs in ground.subsets():
        c = op(xs)
        seen.add(c.mask)
    return [ElementSet(ground, m) for m in sorted(seen)]


def half_spaces(op, closed: Optional[Sequence[ElementSet]] = None,
                max_size: int = 16) -> list[ElementSet]:
    """Closed sets whose complement is also closed (both orientations
    are returned, including the trivial pair when the empty set is
    closed)."""
    if closed is None:
        closed = enumerate_closed_sets(op, max_size)
    masks = {c.mask for c in closed}
    full = (1 << op.ground.size) - 1
    return [c for c in closed if (~c.mask & full) in masks]


def brute_force_maximal_separations(
    op,
    a: ElementSet,
    b: ElementSet,
    max_size: int = 16,
    closed: Optional[Sequence[ElementSet]] = None,
) -> list[tuple[ElementSet, ElementSet]]:
    """Every inclusion-maximal disjoint closed pair containing the
    closures of ``a`` and ``b``; empty when those closures intersect.

    Pass ``closed`` to reuse a known fixed-point family (e.g. the
    intervals of a lattice); otherwise the system is enumerated, which
    requires the size bound.
    """
    ground = op.ground
    if closed is None:
        closed = enumerate_closed_sets(op, max_size)
    if ground.size > 63:
        raise SizeBoundExceeded("mask vectorization caps the ground set at 63")
    ca = op(a).mask
    cb = op(b).mask
    if ca & cb:
        return []
    masks = np.array([c.mask for c in closed], dtype=np.uint64)
    sup1 = masks[(masks & np.uint64(ca)) == np.uint64(ca)]
    sup2 = masks[(masks & np.uint64(cb)) == np.uint64(cb)]
    disj = (sup1[:, None] & sup2[None, :]) == 0
    ii, jj = np.nonzero(disj)
    u, v = sup1[ii], sup2[jj]
    # a pair is dominated when another disjoint pair extends it
    keep = []
    for p in range(len(u)):
        grows = ((u[p] & ~u) == 0) & ((v[p] & ~v) == 0)
        proper = (u != u[p]) | (v != v[p])
        if not (grows & proper).any():
            keep.append(p)
    out = [
        (ElementSet(ground, int(u[p])), ElementSet(ground, int(v[p])))
        for p in keep
    ]
    out.sort(key=lambda pair: (pair[0].mask, pair[1].mask))
    return out


@dataclass(frozen=True)
class KakutaniVerdict:
    kakutani: bool
    # disjoint closed pair with no half-space separation, when one exists
    witness: Optional[tuple[ElementSet, ElementSet]] = None

    def __bool__(self) -> bool:
        return self.kakutani


def brute_force_kakutani(op, max_size: int = 12) -> KakutaniVerdict:
    """Check the S4 axiom by enumeration: every disjoint pair of closed
    sets must lie in complementary closed half-spaces.

    Honest only at tiny scale: deciding the property through the
    operator alone needs exponentially many calls in general.
    """
    _check_bound(op, max_size, "brute_force_kakutani")
    ground = op.ground
    closed = enumerate_closed_sets(op, max_size)
    masks = np.array([c.mask for c in closed], dtype=np.uint64)
    full = np.uint64((1 << ground.size) - 1)
    mask_set = set(int(m) for m in masks)
    hs = np.array([m for m in masks if int(~m & full) in mask_set], dtype=np.uint64)
    k = len(masks)
    separable = np.zeros((k, k), dtype=bool)
    for h in hs:
        inside = (masks & ~h) == 0
        outside = (masks & h) == 0
        separable |= inside[:, None] & outside[None, :]
    disjoint = (masks[:, None] & masks[None, :]) == 0
    bad = disjoint & ~separable
    if not bad.any():
        return KakutaniVerdict(True)
    ii, jj = np.nonzero(bad)
    # deterministic witness: smallest mask pair
    order = np.lexsort((masks[jj], masks[ii]))
    i, j = ii[order[0]], jj[order[0]]
    return KakutaniVerdict(
        False,
        (ElementSet(ground, int(masks[i])), ElementSet(ground, int(masks[j]))),
    )


@dataclass
class PartitionCharacterizationReport:
    """Comparison of the greedy algorithm's partition behaviour against
    the enumerated Kakutani verdict."""

    kakutani: bool
    runs: int
    non_partition_runs: int
    witness_run_non_partition: Optional[bool]
    consistent: bool
    example: Optional[tuple[ElementSet, ElementSet, SeparationOutcome]] = None


def check_partition_characterization(
    op, trials: int = 20, seed: int = 0, max_size: int = 12
) -> PartitionCharacterizationReport:
    """Sample separable input pairs and extension orders, then confirm:
    Kakutani systems partition the ground set on every run, and
    non-Kakutani systems fail to partition on the oracle witness pair.
    """
    verdict = brute_force_kakutani(op, max_size)
    ground = op.ground
    rng = np.random.default_rng(seed)
    runs = 0
    non_partition = 0
    example = None
    for _ in range(trials):
        pair = None
        for _attempt in range(200):
            a = random_subset(rng, ground)
            b = random_subset(rng, ground)
            if not a or not b:
                continue
            if op(a).isdisjoint(op(b)):
                pair = (a, b)
                break
        if pair is None:
            continue
        outcome = mcs_separate(op, pair[0], pair[1], order="random",
                               seed=int(rng.integers(2**32)))
        assert isinstance(outcome, Separated)
        runs += 1
        if not outcome.is_partition():
            non_partition += 1
            if example is None:
                example = (pair[0], pair[1], outcome)
    witness_flag = None
    if not verdict.kakutani:
        wa, wb = verdict.witness
        outcome = mcs_separate(op, wa, wb, order="asc")
        assert isinstance(outcome, Separated)
        runs += 1
        witness_flag = not outcome.is_partition()
        if witness_flag:
            non_partition += 1
            if example is None:
                example = (wa, wb, outcome)
    if verdict.kakutani:
        consistent = non_partition == 0
    else:
        consistent = witness_flag is True
    return PartitionCharacterizationReport(
        kakutani=verdict.kakutani,
        runs=runs,
        non_partition_runs=non_partition,
        witness_run_non_partition=witness_flag,
        consistent=consistent,
        example=example,
    )
