"""Finite lattices, the order-interval closure, and the cover-walking
ideal/filter separation algorithm.

A lattice is stored as its full order relation (boolean n x n
reachability table) plus derived cover lists and join/meet tables;
order queries are O(1) lookups, which the separation loops rely on.
Closed sets of the induced closure system are the order intervals
[inf S, sup S] together with the empty set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

from .core import ElementSet, GroundSet

__all__ = [
    "NotALatticeError",
    "FiniteLattice",
    "build_lattice",
    "sup",
    "inf",
    "lambda_closure",
    "LambdaClosure",
    "LatticeSeparated",
    "LatticeNo",
    "lattice_separate",
    "is_distributive",
    "LatticeKakutaniReport",
    "lattice_kakutani_check",
    "interval_closed_sets",
    "FormalContext",
    "concept_lattice",
    "object_concept",
    "set_partitions",
    "partition_lattice",
    "atom_partition",
]


class NotALatticeError(ValueError):
    """The input order fails a lattice axiom; names the offending pair."""


class FiniteLattice:
    """Finite lattice given by its order relation.

    ``leq[i, j]`` means i <= j. Joins and meets are tabulated at
    construction time, which also serves as the lattice-axiom check.
    """

    def __init__(self, leq: np.ndarray, labels: Optional[Sequence[str]] = None):
        leq = np.asarray(leq, dtype=bool)
        n = leq.shape[0]
        if leq.shape != (n, n) or n < 1:
            raise ValueError("leq must be a square boolean matrix")
        self.n = n
        self.leq = leq
        self.labels = list(labels) if labels is not None else None
        self._validate_order()
        lt = leq & ~np.eye(n, dtype=bool)
        between = lt @ lt
        cover = lt & ~between
        self.covers_up = [np.flatnonzero(cover[i]).tolist() for i in range(n)]
        self.covers_down = [np.flatnonzero(cover[:, i]).tolist() for i in range(n)]
        bottoms = np.flatnonzero(leq.all(axis=1))
        tops = np.flatnonzero(leq.all(axis=0))
        if len(bottoms) != 1:
            raise NotALatticeError(f"order has {len(bottoms)} bottom elements")
        if len(tops) != 1:
            raise NotALatticeError(f"order has {len(tops)} top elements")
        self.bottom = int(bottoms[0])
        self.top = int(tops[0])
        self.join = self._bound_table(leq)
        self.meet = self._bound_table(leq.T)
        self.ground = GroundSet(n, labels=self.labels)

    def _validate_order(self):
        n, leq = self.n, self.leq
        if not leq.diagonal().all():
            raise NotALatticeError("order is not reflexive")
        anti = leq & leq.T
        if not np.array_equal(anti, np.eye(n, dtype=bool)):
            i, j = np.argwhere(anti & ~np.eye(n, dtype=bool))[0]
            raise NotALatticeError(f"antisymmetry fails on pair ({i}, {j})")
        closure = leq @ leq
        if (closure & ~leq).any():
            i, j = np.argwhere(closure & ~leq)[0]
            raise NotALatticeError(f"transitivity fails on pair ({i}, {j})")

    def _bound_table(self, leq: np.ndarray) -> np.ndarray:
        """Least-upper-bound table for the given orientation; the meet
        table comes from the transposed order."""
        n = self.n
        sizes = leq.sum(axis=1)
        table = np.empty((n, n), dtype=np.int32)
        for a in range(n):
            ub = leq[a][None, :] & leq  # row b: upper bounds of {a, b}
            scored = np.where(ub, sizes[None, :], -1)
            c = scored.argmax(axis=1)
            if (scored[np.arange(n), c] < 0).any():
                b = int(np.flatnonzero(scored[np.arange(n), c] < 0)[0])
                raise NotALatticeError(f"pair ({a}, {b}) has no common bound")
            bad = (ub & ~leq[c]).any(axis=1)
            if bad.any():
                b = int(np.flatnonzero(bad)[0])
                raise NotALatticeError(
                    f"pair ({a}, {b}) has no unique least/greatest bound"
                )
            table[a] = c
        return table

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)

    def up_set(self, i: int) -> np.ndarray:
        return self.leq[i]

    def down_set(self, i: int) -> np.ndarray:
        return self.leq[:, i]

    def ideal_of(self, top: int) -> ElementSet:
        return ElementSet.from_bool_array(self.ground, self.leq[:, top].astype(np.uint8))

    def filter_of(self, bottom: int) -> ElementSet:
        return ElementSet.from_bool_array(self.ground, self.leq[bottom].astype(np.uint8))

    def __repr__(self):
        return f"FiniteLattice(n={self.n})"


def build_lattice(
    n: int,
    cover_edges: Iterable[tuple[int, int]],
    labels: Optional[Sequence[str]] = None,
    max_n: int = 5000,
) -> FiniteLattice:
    """Lattice from Hasse-diagram edges (child, parent).

    The reachability closure of the edges is taken as the order; real
    cover lists are recomputed from it, so redundant input edges are
    tolerated. Fails loudly, naming a pair, when sup or inf is missing
    or ambiguous.
    """
    if n < 1 or n > max_n:
        raise ValueError(f"element count {n} outside 1..{max_n}")
    up: list[list[int]] = [[] for _ in range(n)]
    indeg = np.zeros(n, dtype=np.int64)
    for c, p in cover_edges:
        if not (0 <= c < n and 0 <= p < n) or c == p:
            raise ValueError(f"bad cover edge ({c}, {p})")
        up[c].append(p)
        indeg[p] += 1
    # topological order, children first
    stack = [v for v in range(n) if indeg[v] == 0]
    topo = []
    indeg2 = indeg.copy()
    while stack:
        v = stack.pop()
        topo.append(v)
        for p in up[v]:
            indeg2[p] -= 1
            if indeg2[p] == 0:
                stack.append(p)
    if len(topo) != n:
        raise NotALatticeError("cover edges contain a cycle")
    leq = np.eye(n, dtype=bool)
    for v in reversed(topo):
        for p in up[v]:
            leq[v] |= leq[p]
    return FiniteLattice(leq, labels=labels)


def sup(lattice: FiniteLattice, elems: Iterable[int]) -> int:
    """Least upper bound of a non-empty element collection."""
    it = iter(elems)
    try:
        acc = next(it)
    except StopIteration:
        raise ValueError("sup of an empty collection")
    for e in it:
        acc = int(lattice.join[acc, e])
    return int(acc)


def inf(lattice: FiniteLattice, elems: Iterable[int]) -> int:
    """Greatest lower bound of a non-empty element collection."""
    it = iter(elems)
    try:
        acc = next(it)
    except StopIteration:
        raise ValueError("inf of an empty collection")
    for e in it:
        acc = int(lattice.meet[acc, e])
    return int(acc)


def lambda_closure(lattice: FiniteLattice, xs: ElementSet) -> ElementSet:
    """Order interval [inf xs, sup xs]; the empty set stays empty."""
    m = xs.members()
    if not m:
        return xs
    lo = inf(lattice, m)
    hi = sup(lattice, m)
    bits = (lattice.leq[lo] & lattice.leq[:, hi]).astype(np.uint8)
    return ElementSet.from_bool_array(xs.ground, bits)


class LambdaClosure:
    """Order-interval closure operator over a lattice's element set."""

    def __init__(self, lattice: FiniteLattice):
        self.lattice = lattice
        self.ground = lattice.ground

    def __call__(self, xs: ElementSet) -> ElementSet:
        return lambda_closure(self.lattice, xs)

    def __repr__(self):
        return f"<lambda closure over {self.lattice!r}>"


@dataclass(frozen=True)
class LatticeSeparated:
    """Endpoints of a maximal disjoint ideal/filter pair.

    ``ideal_from`` records which input landed in the ideal ("a" or
    "b"); ``le_evaluations`` counts the order-relation queries the run
    made (branch tests plus cover scans)."""

    top_ideal: int
    bottom_filter: int
    ideal_from: str
    le_evaluations: int


@dataclass(frozen=True)
class LatticeNo:
    """Interval closures of the inputs intersect; no separation."""

    le_evaluations: int


CoverChoice = Union[str, Callable[[list[int]], list[int]]]


def _scan_order(choice: CoverChoice, rng: Optional[np.random.Generator]):
    if choice == "asc":
        return lambda covers: covers
    if choice == "random":
        if rng is None:
            raise ValueError("random cover choice needs a seed")
        return lambda covers: [covers[i] for i in rng.permutation(len(covers))]
    if callable(choice):
        return choice
    raise ValueError(f"unknown cover choice {choice!r}")


def lattice_separate(
    lattice: FiniteLattice,
    a: Iterable[int],
    b: Iterable[int],
    choice: CoverChoice = "asc",
    seed: Optional[int] = None,
) -> Union[LatticeSeparated, LatticeNo]:
    """Greedy maximal ideal/filter separation on a finite lattice.

    Decides separability by comparing suprema and infima of the inputs,
    then grows the ideal top upward through upper covers and the filter
    bottom downward through lower covers while the two stay
    incomparable. The ideal loop runs to exhaustion before the filter
    loop starts. Cover ties are broken by ``choice``: lowest element id
    first by default, a seeded shuffle for "random", or a caller-
    supplied reordering function.
    """
    a = list(a)
    b = list(b)
    if not a or not b:
        raise ValueError("lattice_separate requires non-empty inputs")
    leq = lattice.leq
    evals = 0
    top_a, bot_a = sup(lattice, a), inf(lattice, a)
    top_b, bot_b = sup(lattice, b), inf(lattice, b)
    rng = np.random.default_rng(seed) if choice == "random" else None
    order = _scan_order(choice, rng)
    evals += 1
    if not leq[bot_b, top_a]:
        top_i, bot_f, origin = top_a, bot_b, "a"
    else:
        evals += 1
        if not leq[bot_a, top_b]:
            top_i, bot_f, origin = top_b, bot_a, "b"
        else:
            return LatticeNo(evals)
    while True:
        step = None
        for u in order(lattice.covers_up[top_i]):
            evals += 1
            if not leq[bot_f, u]:
                step = u
                break
        if step is None:
            break
        top_i = step
    while True:
        step = None
        for low in order(lattice.covers_down[bot_f]):
            evals += 1
            if not leq[low, top_i]:
                step = low
                break
        if step is None:
            break
        bot_f = step
    return LatticeSeparated(int(top_i), int(bot_f), origin, evals)


def is_distributive(lattice: FiniteLattice, max_size: int = 500) -> bool:
    """Exhaustive check of a ^ (b v c) == (a ^ b) v (a ^ c)."""
    n = lattice.n
    if n > max_size:
        raise ValueError(f"is_distributive bound exceeded: {n} > {max_size}")
    join, meet = lattice.join, lattice.meet
    for a in range(n):
        ma = meet[a]
        lhs = ma[join]
        rhs = join[ma[:, None], ma[None, :]]
        if not np.array_equal(lhs, rhs):
            return False
    return True


def interval_closed_sets(lattice: FiniteLattice) -> list[ElementSet]:
    """All closed sets of the interval closure: the order intervals
    plus the empty set. Linear in n^2, unlike subset enumeration."""
    ground = lattice.ground
    seen = {0}
    out = [ground.empty()]
    for lo in range(lattice.n):
        for hi in np.flatnonzero(lattice.leq[lo]):
            bits = (lattice.leq[lo] & lattice.leq[:, hi]).astype(np.uint8)
            es = ElementSet.from_bool_array(ground, bits)
            if es.mask not in seen:
                seen.add(es.mask)
                out.append(es)
    return out


@dataclass
class LatticeKakutaniReport:
    distributive: bool
    runs: int
    non_partition_runs: int
    consistent: bool
    example: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None


def lattice_kakutani_check(
    lattice: FiniteLattice,
    trials: int = 50,
    seed: int = 0,
    exhaustive_bound: int = 16,
) -> LatticeKakutaniReport:
    """Partition behaviour of the separation algorithm vs distributivity.

    Runs on random disjoint-closure input pairs (and, for small
    lattices, on every pair of disjoint intervals), recording whether
    ideal plus filter always cover the lattice; consistency means that
    happens exactly when the lattice is distributive.
    """
    distributive = is_distributive(lattice)
    rng = np.random.default_rng(seed)
    n = lattice.n
    runs = 0
    bad = 0
    example = None

    def record(a, b, choice, run_seed=None):
        nonlocal runs, bad, example
        res = lattice_separate(lattice, a, b, choice=choice, seed=run_seed)
        if isinstance(res, LatticeNo):
            return
        runs += 1
        covered = lattice.leq[:, res.top_ideal] | lattice.leq[res.bottom_filter]
        if not covered.all():
            bad += 1
            if example is None:
                example = (tuple(a), tuple(b))

    if n <= exhaustive_bound:
        pairs = [(lo, hi) for lo in range(n) for hi in np.flatnonzero(lattice.leq[lo])]
        for lo1, hi1 in pairs:
            iv1 = lattice.leq[lo1] & lattice.leq[:, hi1]
            for lo2, hi2 in pairs:
                iv2 = lattice.leq[lo2] & lattice.leq[:, hi2]
                if not (iv1 & iv2).any():
                    record([lo1, int(hi1)], [lo2, int(hi2)], "asc")
    for _ in range(trials):
        for _attempt in range(100):
            a = [int(x) for x in rng.integers(0, n, size=int(rng.integers(1, 4)))]
            b = [int(x) for x in rng.integers(0, n, size=int(rng.integers(1, 4)))]
            la = lambda_closure(lattice, lattice.ground.set_of(a))
            lb = lambda_closure(lattice, lattice.ground.set_of(b))
            if la.isdisjoint(lb):
                record(a, b, "random", run_seed=int(rng.integers(2**32)))
                break
    consistent = (bad == 0) if distributive else (bad > 0)
    return LatticeKakutaniReport(
        distributive=distributive,
        runs=runs,
        non_partition_runs=bad,
        consistent=consistent,
        example=example,
    )


# --- concept lattices ----------------------------------------------------


class FormalContext:
    """Binary object x attribute incidence with display names."""

    def __init__(self, incidence, objects=None, attributes=None):
        arr = np.asarray(incidence)
        if arr.ndim != 2:
            raise ValueError("incidence must be a 2-d 0/1 matrix")
        if not np.isin(arr, (0, 1)).all():
            raise ValueError("incidence entries must be 0 or 1")
        self.incidence = arr.astype(bool)
        self.n_objects, self.n_attributes = arr.shape
        self.objects = list(objects) if objects else [f"o{i+1}" for i in range(self.n_objects)]
        self.attributes = (
            list(attributes) if attributes else [f"a{j+1}" for j in range(self.n_attributes)]
        )
        if len(self.objects) != self.n_objects or len(self.attributes) != self.n_attributes:
            raise ValueError("name lists must match the incidence shape")

    def extent_of(self, intent_mask: int) -> int:
        rows = np.ones(self.n_objects, dtype=bool)
        for j in range(self.n_attributes):
            if (intent_mask >> j) & 1:
                rows &= self.incidence[:, j]
        mask = 0
        for i in np.flatnonzero(rows):
            mask |= 1 << int(i)
        return mask

    def intent_of(self, extent_mask: int) -> int:
        cols = np.ones(self.n_attributes, dtype=bool)
        for i in range(self.n_objects):
            if (extent_mask >> i) & 1:
                cols &= self.incidence[i]
        mask = 0
        for j in np.flatnonzero(cols):
            mask |= 1 << int(j)
        return mask

    def __repr__(self):
        return f"FormalContext({self.n_objects} objects x {self.n_attributes} attributes)"


def _closed_intents(ctx: FormalContext) -> list[int]:
    """All closed attribute sets in lectic order (next-closure walk)."""
    na = ctx.n_attributes
    close = lambda m: ctx.intent_of(ctx.extent_of(m))
    out = []
    cur = close(0)
    while True:
        out.append(cur)
        nxt = None
        for j in reversed(range(na)):
            if (cur >> j) & 1:
                continue
            below = cur & ((1 << j) - 1)
            cand = close(below | (1 << j))
            # canonical: the candidate adds nothing below attribute j
            if not cand & ~cur & ((1 << j) - 1):
                nxt = cand
                break
        if nxt is None:
            break
        cur = nxt
    return out


def concept_lattice(ctx: FormalContext) -> tuple[FiniteLattice, list[tuple[tuple, tuple]]]:
    """All formal concepts of the context, ordered by extent inclusion,
    with the bounds (O, empty) and (empty, A) adjoined when they are
    not concepts themselves.

    Returns the lattice and the aligned list of (extent, intent) label
    pairs (tuples of object and attribute names).
    """
    intents = _closed_intents(ctx)
    concepts = [(ctx.extent_of(i), i) for i in intents]
    full_ext = (1 << ctx.n_objects) - 1
    full_int = (1 << ctx.n_attributes) - 1
    have = {c[0] for c in concepts}
    artificial_top = artificial_bottom = None
    if not any(ext == full_ext and intent == 0 for ext, intent in concepts):
        artificial_top = (full_ext, 0)
    if not any(ext == 0 and intent == full_int for ext, intent in concepts):
        artificial_bottom = (0, full_int)
    elems = list(concepts)
    if artificial_bottom:
        elems.append(artificial_bottom)
    if artificial_top:
        elems.append(artificial_top)
    elems.sort(key=lambda c: (bin(c[0]).count("1"), c[0]))
    k = len(elems)
    leq = np.zeros((k, k), dtype=bool)
    for i, (ei, _) in enumerate(elems):
        for j, (ej, _) in enumerate(elems):
            if elems[i] == artificial_bottom or elems[j] == artificial_top:
                leq[i, j] = True
            elif elems[j] == artificial_bottom or elems[i] == artificial_top:
                leq[i, j] = elems[i] == elems[j]
            else:
                leq[i, j] = (ei & ~ej) == 0
    labels = []
    named = []
    for ext, intent in elems:
        objs = tuple(ctx.objects[i] for i in range(ctx.n_objects) if (ext >> i) & 1)
        attrs = tuple(ctx.attributes[j] for j in range(ctx.n_attributes) if (intent >> j) & 1)
        named.append((objs, attrs))
        labels.append("({},{})".format("".join(objs) or "0", "".join(attrs) or "0"))
    return FiniteLattice(leq, labels=labels), named


def object_concept(
    lattice: FiniteLattice,
    concepts: Sequence[tuple[tuple, tuple]],
    objs: Iterable[str],
) -> int:
    """Element id of the smallest concept whose extent contains the
    given objects (the concept those objects generate)."""
    want = set(objs)
    best = None
    for i, (ext, _) in enumerate(concepts):
        if want <= set(ext):
            if best is None or set(ext) < set(concepts[best][0]):
                best = i
    if best is None:
        raise KeyError(f"no concept contains objects {sorted(want)}")
    return best


# --- partition lattices ---------------------------------------------------


def set_partitions(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """Canonical partitions of {0..n-1}: blocks sorted internally and
    by their minima. Enumeration follows restricted growth strings."""
    out = []

    def grow(prefix, maxblock):
        i = len(prefix)
        if i == n:
            blocks: list[list[int]] = [[] for _ in range(maxblock + 1)]
            for e, blk in enumerate(prefix):
                blocks[blk].append(e)
            out.append(tuple(tuple(b) for b in blocks))
            return
        for blk in range(maxblock + 2):
            grow(prefix + [blk], max(maxblock, blk))

    grow([0], 0)
    return out


def atom_partition(terms: Sequence[str]) -> tuple[tuple[int, ...], ...]:
    """Partition of argument positions induced by equal terms, e.g.
    (w, x, y, y, z) gives blocks {0}{1}{2,3}{4}."""
    groups: dict[str, list[int]] = {}
    for pos, t in enumerate(terms):
        groups.setdefault(t, []).append(pos)
    blocks = sorted((tuple(v) for v in groups.values()), key=lambda b: b[0])
    return tuple(blocks)


def _refines(fine, coarse_owner) -> bool:
    for block in fine:
        owner = coarse_owner[block[0]]
        for e in block[1:]:
            if coarse_owner[e] != owner:
                return False
    return True


def partition_lattice(n: int, max_n: int = 7) -> FiniteLattice:
    """Lattice of partitions of {0..n-1}, ordered coarser-below-finer:
    the single block is the bottom, all singletons the top. Element
    order matches :func:`set_partitions`. Bell-number growth caps n."""
    if not 1 <= n <= max_n:
        raise ValueError(f"partition lattice size {n} outside 1..{max_n}")
    parts = set_partitions(n)
    k = len(parts)
    owners = []
    for p in parts:
        owner = [0] * n
        for b_id, block in enumerate(p):
            for e in block:
                owner[e] = b_id
        owners.append(owner)
    leq = np.zeros((k, k), dtype=bool)
    for j, fine in enumerate(parts):
        for i in range(k):
            # i <= j when partition i is a coarsening of partition j
            leq[i, j] = _refines(fine, owners[i])
    labels = ["|".join("".join(str(e) for e in b) for b in p) for p in parts]
    return FiniteLattice(leq, labels=labels)
