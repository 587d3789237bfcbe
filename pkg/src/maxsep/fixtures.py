"""Reference closure operators used across tests, diagnostics and docs.

These are small, hand-analyzable systems: the min/max interval closure
on a chain, the half-size threshold system (Kakutani, with a punctured
non-Kakutani variant), the near-discrete system whose separation cost
is maximal for every extension order, and two deliberately broken
operators for exercising the law checker.
"""

from __future__ import annotations

from .core import ElementSet, FunctionClosure, GroundSet

__all__ = [
    "chain_interval",
    "threshold_system",
    "punctured_threshold_system",
    "sparse_system",
    "padded_operator",
    "dropping_operator",
]


def chain_interval(n: int) -> FunctionClosure:
    """Interval closure on the chain 0 < 1 < ... < n-1:
    X maps to {x : min X <= x <= max X}, with the empty set fixed."""
    ground = GroundSet(n)

    def close(xs: ElementSet) -> ElementSet:
        if not xs:
            return xs
        m = xs.members()
        lo, hi = m[0], m[-1]
        return ElementSet(ground, ((1 << (hi - lo + 1)) - 1) << lo)

    return FunctionClosure(ground, close, name="chain-interval")


def threshold_system(n: int) -> FunctionClosure:
    """Closed sets are all subsets of size at most n/2, plus the ground
    set itself. Requires even n; the system is Kakutani."""
    if n % 2 != 0 or n < 2:
        raise ValueError("threshold system needs even n >= 2")
    ground = GroundSet(n)
    half = n // 2

    def close(xs: ElementSet) -> ElementSet:
        return xs if len(xs) <= half else ground.full()

    return FunctionClosure(ground, close, name="threshold")


def punctured_threshold_system(n: int, removed: ElementSet) -> FunctionClosure:
    """Threshold system with one half-sized closed set removed, which
    destroys the Kakutani property while staying a closure system."""
    base = threshold_system(n)
    if len(removed) != n // 2:
        raise ValueError("removed set must have size n/2")
    ground = base.ground

    def close(xs: ElementSet) -> ElementSet:
        c = base(xs)
        return ground.full() if c == removed else c

    return FunctionClosure(ground, close, name="punctured-threshold")


def sparse_system(n: int) -> FunctionClosure:
    """Only the empty set and the first two singletons are closed;
    everything else closes to the full ground set. Forces 2n-2 closure
    calls when separating {0} from {1}, regardless of element order."""
    if n < 3:
        raise ValueError("sparse system needs n >= 3")
    ground = GroundSet(n)

    def close(xs: ElementSet) -> ElementSet:
        return xs if xs.mask in (0, 1, 2) else ground.full()

    return FunctionClosure(ground, close, name="sparse")


def padded_operator(n: int, pad: int = 0) -> FunctionClosure:
    """X maps to X with ``pad`` adjoined; a valid closure operator whose
    empty closure is non-empty, so nothing is half-space separable."""
    ground = GroundSet(n)

    def close(xs: ElementSet) -> ElementSet:
        return xs.add(pad)

    return FunctionClosure(ground, close, name="padded")


def dropping_operator(n: int, dropped: int = 0) -> FunctionClosure:
    """X maps to X minus ``dropped``: violates extensivity on purpose."""
    ground = GroundSet(n)

    def close(xs: ElementSet) -> ElementSet:
        return ElementSet(ground, xs.mask & ~(1 << dropped))

    return FunctionClosure(ground, close, name="dropping")
