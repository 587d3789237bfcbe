"""Abstract closure systems over finite ground sets and the greedy
maximal closed-set separation algorithm.

A closure system is handled purely through its closure operator: any
callable mapping an :class:`ElementSet` to an :class:`ElementSet` over
the same :class:`GroundSet`. Operators are expected to be extensive,
monotone and idempotent; :func:`verify_closure_laws` spot-checks those
laws on random subsets instead of enforcing them per call.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

__all__ = [
    "GroundSet",
    "ElementSet",
    "FunctionClosure",
    "InstrumentedClosure",
    "Separated",
    "Inseparable",
    "SeparationOutcome",
    "mcs_separate",
    "hss_decide_kakutani",
    "is_closed",
    "is_half_space",
    "LawReport",
    "verify_closure_laws",
    "resolve_order",
    "random_subset",
]


class GroundSet:
    """Indexed finite universe; element ids are the dense range 0..size-1."""

    __slots__ = ("size", "labels", "_label_index")

    def __init__(self, size: int, labels: Optional[Sequence[str]] = None):
        if size < 1:
            raise ValueError(f"ground set needs size >= 1, got {size}")
        if labels is not None and len(labels) != size:
            raise ValueError("labels must match ground set size")
        self.size = size
        self.labels = list(labels) if labels is not None else None
        self._label_index = (
            {lab: i for i, lab in enumerate(self.labels)} if self.labels else None
        )

    def label(self, e: int) -> str:
        return self.labels[e] if self.labels else str(e)

    def index_of(self, label: str) -> int:
        if self._label_index and label in self._label_index:
            return self._label_index[label]
        try:
            e = int(label)
        except ValueError:
            raise KeyError(f"unknown element label {label!r}")
        if not 0 <= e < self.size:
            raise KeyError(f"element id {e} out of range 0..{self.size - 1}")
        return e

    def set_of(self, members: Iterable[int]) -> "ElementSet":
        mask = 0
        for e in members:
            e = int(e)
            if not 0 <= e < self.size:
                raise ValueError(f"element id {e} out of range 0..{self.size - 1}")
            mask |= 1 << e
        return ElementSet(self, mask)

    def empty(self) -> "ElementSet":
        return ElementSet(self, 0)

    def full(self) -> "ElementSet":
        return ElementSet(self, (1 << self.size) - 1)

    def subsets(self) -> Iterable["ElementSet"]:
        """All 2^size subsets; only sensible for small universes."""
        for mask in range(1 << self.size):
            yield ElementSet(self, mask)

    def __repr__(self):
        return f"GroundSet(size={self.size})"


class ElementSet:
    """Immutable subset of a ground set, stored as an int bitmask.

    Bitmask blocks give O(size/word) intersection/union/complement,
    which dominates the separation loops. Equality is extensional.
    """

    __slots__ = ("ground", "mask")

    def __init__(self, ground: GroundSet, mask: int):
        self.ground = ground
        self.mask = mask

    # --- construction helpers -------------------------------------------
    @classmethod
    def from_bool_array(cls, ground: GroundSet, bits: np.ndarray) -> "ElementSet":
        packed = np.packbits(bits.astype(np.uint8), bitorder="little").tobytes()
        return cls(ground, int.from_bytes(packed, "little"))

    def to_bool_array(self) -> np.ndarray:
        n = self.ground.size
        raw = self.mask.to_bytes((n + 7) // 8, "little")
        bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
        return bits[:n]

    # --- set algebra ------------------------------------------------------
    def __and__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.ground, self.mask & other.mask)

    def __or__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.ground, self.mask | other.mask)

    def __sub__(self, other: "ElementSet") -> "ElementSet":
        return ElementSet(self.ground, self.mask & ~other.mask)

    def complement(self) -> "ElementSet":
        return ElementSet(self.ground, ~self.mask & (1 << self.ground.size) - 1)

    def add(self, e: int) -> "ElementSet":
        return ElementSet(self.ground, self.mask | (1 << e))

    def isdisjoint(self, other: "ElementSet") -> bool:
        return not self.mask & other.mask

    def issubset(self, other: "ElementSet") -> bool:
        return not self.mask & ~other.mask

    def __contains__(self, e: int) -> bool:
        return bool((self.mask >> e) & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __iter__(self):
        return iter(self.members())

    def members(self) -> list[int]:
        out = []
        m = self.mask
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ElementSet)
            and self.ground.size == other.ground.size
            and self.mask == other.mask
        )

    def __hash__(self):
        return hash((self.ground.size, self.mask))

    def __repr__(self):
        names = ",".join(self.ground.label(e) for e in self.members())
        return "{" + names + "}"


ClosureFn = Callable[[ElementSet], ElementSet]


class FunctionClosure:
    """Closure operator defined by a plain function over element sets."""

    def __init__(self, ground: GroundSet, fn: ClosureFn, name: str = "closure"):
        self.ground = ground
        self._fn = fn
        self.name = name

    def __call__(self, xs: ElementSet) -> ElementSet:
        return self._fn(xs)

    def __repr__(self):
        return f"<{self.name} over {self.ground.size} elements>"


class InstrumentedClosure:
    """Wraps an operator with a monotone evaluation counter.

    The counter increments by exactly one per closure evaluation and is
    never reset implicitly; instrumentation is per run, so wrap a fresh
    instance when runs must be counted independently.
    """

    def __init__(self, inner):
        self.inner = inner
        self.calls = 0

    @property
    def ground(self) -> GroundSet:
        return self.inner.ground

    def __call__(self, xs: ElementSet) -> ElementSet:
        self.calls += 1
        return self.inner(xs)

    def reset(self) -> None:
        self.calls = 0


@dataclass(frozen=True)
class Separated:
    """Disjoint closed supersets of the two inputs, plus the number of
    closure-operator calls the run consumed."""

    h1: ElementSet
    h2: ElementSet
    closure_calls: int

    def is_partition(self) -> bool:
        return (self.h1.mask | self.h2.mask) == self.h1.ground.full().mask


@dataclass(frozen=True)
class Inseparable:
    """The closures of the inputs intersect: no separation exists."""


SeparationOutcome = Union[Separated, Inseparable]

Order = Union[str, Sequence[int], None]


def resolve_order(order: Order, n: int, seed: Optional[int] = None) -> list[int]:
    """Turn an extension-order choice into an element priority list.

    "asc" is the reproducible default; "random" is a seeded uniform
    permutation; an explicit id sequence is used as given, with any
    missing ids appended in ascending order.
    """
    if order is None or order == "asc":
        return list(range(n))
    if order == "random":
        rng = np.random.default_rng(seed)
        return [int(x) for x in rng.permutation(n)]
    prio = [int(e) for e in order]
    for e in prio:
        if not 0 <= e < n:
            raise ValueError(f"order contains out-of-range element {e}")
    seen = set(prio)
    if len(seen) != len(prio):
        raise ValueError("order contains duplicate elements")
    prio.extend(e for e in range(n) if e not in seen)
    return prio


def mcs_separate(
    op,
    a: ElementSet,
    b: ElementSet,
    order: Order = "asc",
    seed: Optional[int] = None,
) -> SeparationOutcome:
    """Greedy maximal closed-set separation.

    Starting from the closures of ``a`` and ``b``, repeatedly picks an
    uncovered element (in priority order) and tries to absorb it into
    the first side, then the second; an element rejected by both sides
    is discarded for good. Uses at most ``2|E| - 2`` closure calls.

    Returns :class:`Separated` with maximal disjoint closed supersets,
    or :class:`Inseparable` when the input closures intersect.
    """
    if not a or not b:
        raise ValueError("mcs_separate requires non-empty input sets")
    inst = op if isinstance(op, InstrumentedClosure) else InstrumentedClosure(op)
    ground = inst.ground
    start = inst.calls
    h1 = inst(a)
    h2 = inst(b)
    if not h1.isdisjoint(h2):
        return Inseparable()
    full = (1 << ground.size) - 1
    h1m, h2m = h1.mask, h2.mask
    fm = full & ~(h1m | h2m)
    for e in resolve_order(order, ground.size, seed):
        bit = 1 << e
        if not fm & bit:
            continue
        fm &= ~bit
        c1 = inst(ElementSet(ground, h1m | bit))
        if not c1.mask & h2m:
            h1m = c1.mask
            fm &= ~h1m
        else:
            c2 = inst(ElementSet(ground, h2m | bit))
            if not c2.mask & h1m:
                h2m = c2.mask
                fm &= ~h2m
    return Separated(
        ElementSet(ground, h1m), ElementSet(ground, h2m), inst.calls - start
    )


def hss_decide_kakutani(op, a: ElementSet, b: ElementSet) -> bool:
    """Half-space separability decision for Kakutani systems.

    Contract: the caller asserts the closure system satisfies the S4
    axiom; then separability is exactly disjointness of the two
    closures, decided with two closure calls.
    """
    return op(a).isdisjoint(op(b))


def is_closed(op, xs: ElementSet) -> bool:
    return op(xs) == xs


def is_half_space(op, h: ElementSet) -> bool:
    return is_closed(op, h) and is_closed(op, h.complement())


def random_subset(rng: np.random.Generator, ground: GroundSet) -> ElementSet:
    bits = rng.integers(0, 2, size=ground.size, dtype=np.uint8)
    return ElementSet.from_bool_array(ground, bits)


@dataclass
class LawReport:
    """Outcome of the closure-law spot check; a law's field holds the
    first counterexample found, or None when no violation showed up."""

    trials: int
    extensivity: Optional[ElementSet] = None
    monotonicity: Optional[tuple] = None
    idempotency: Optional[ElementSet] = None

    def ok(self) -> bool:
        return (
            self.extensivity is None
            and self.monotonicity is None
            and self.idempotency is None
        )

    def failures(self) -> list[str]:
        out = []
        if self.extensivity is not None:
            out.append(f"extensivity: X={self.extensivity!r}")
        if self.monotonicity is not None:
            x, y = self.monotonicity
            out.append(f"monotonicity: X={x!r} Y={y!r}")
        if self.idempotency is not None:
            out.append(f"idempotency: X={self.idempotency!r}")
        return out


def verify_closure_laws(op, trials: int, seed: int = 0) -> LawReport:
    """Sample random subsets and test extensivity, monotonicity and
    idempotency, recording the first witness per violated law."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    ground = op.ground
    rng = np.random.default_rng(seed)
    report = LawReport(trials=trials)
    for _ in range(trials):
        x = random_subset(rng, ground)
        cx = op(x)
        if report.extensivity is None and not x.issubset(cx):
            report.extensivity = x
        if report.idempotency is None and op(cx) != cx:
            report.idempotency = x
        if report.monotonicity is None:
            y = x | random_subset(rng, ground)
            if not cx.issubset(op(y)):
                report.monotonicity = (x, y)
        if not (
            report.extensivity is None
            or report.monotonicity is None
            or report.idempotency is None
        ):
            break
    return report
