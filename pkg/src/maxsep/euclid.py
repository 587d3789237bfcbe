"""Trace of the Euclidean convex hull on a finite point set.

The closure of a subset X is conv(X) intersected with the ground
points. Membership of a single query point is a linear feasibility
problem (non-negative weights summing to one); the closure of a whole
subset is computed in a batch from the hull facets, with degenerate
generator sets handled by projecting to their affine span first.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np
from scipy.optimize import nnls
from scipy.spatial import ConvexHull, QhullError

from .core import ElementSet, GroundSet

__all__ = [
    "PointSet",
    "HullNumericalError",
    "in_convex_hull",
    "alpha_closure",
    "AlphaClosure",
    "generate_d2_instance",
]

DEFAULT_EPS = 1e-9


class HullNumericalError(RuntimeError):
    """Hull membership could not be decided reliably."""


class PointSet:
    """Finite list of d-dimensional points; the row index is the
    element id of the induced ground set."""

    def __init__(self, coords):
        arr = np.asarray(coords, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("coords must be a non-empty (n, d) array")
        if not np.isfinite(arr).all():
            raise ValueError("coordinates must be finite")
        self.coords = arr
        self.n, self.dim = arr.shape
        self.ground = GroundSet(self.n)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"PointSet(n={self.n}, d={self.dim})"


def in_convex_hull(
    points: PointSet,
    generators: Sequence[int],
    query,
    eps: float = DEFAULT_EPS,
) -> bool:
    """Feasibility of expressing ``query`` as a convex combination of
    the generator points, within ``eps`` on the stacked residual
    (coordinates plus the weight-sum row).

    Solved as a non-negative least-squares phase-one problem; solver
    breakdown raises :class:`HullNumericalError` rather than answering.
    """
    gen = list(generators)
    if not gen:
        raise ValueError("in_convex_hull needs a non-empty generator set")
    pts = points.coords[gen]
    q = np.asarray(query, dtype=np.float64)
    if q.shape != (points.dim,):
        raise ValueError(f"query must have dimension {points.dim}")
    a = np.vstack([pts.T, np.ones(len(gen))])
    b = np.concatenate([q, [1.0]])
    try:
        _, resid = nnls(a, b)
    except Exception as exc:
        raise HullNumericalError(f"nnls failed on hull query: {exc}") from exc
    return bool(resid <= max(eps, eps * np.abs(b).max()))


def _affine_basis(gen: np.ndarray):
    """Orthonormal basis of the affine span of the generator rows."""
    origin = gen[0]
    rel = gen - origin
    if len(gen) == 1:
        return origin, np.zeros((0, gen.shape[1]))
    _, s, vt = np.linalg.svd(rel, full_matrices=False)
    if s.size == 0 or s[0] <= 0.0:
        return origin, np.zeros((0, gen.shape[1]))
    rank = int(np.sum(s > max(rel.shape) * np.finfo(np.float64).eps * s[0]))
    return origin, vt[:rank]


def _hull_trace(all_coords: np.ndarray, gen: np.ndarray, eps: float) -> np.ndarray:
    """Boolean row mask of points inside conv(gen), within eps."""
    origin, basis = _affine_basis(gen)
    rank = basis.shape[0]
    rel = all_coords - origin
    if rank == 0:
        return (np.abs(rel) <= eps).all(axis=1)
    proj = rel @ basis.T
    recon = proj @ basis
    off_span = np.abs(rel - recon).max(axis=1) > eps
    gen_proj = (gen - origin) @ basis.T
    if rank == 1:
        t = proj[:, 0]
        lo, hi = gen_proj[:, 0].min(), gen_proj[:, 0].max()
        inside = (t >= lo - eps) & (t <= hi + eps)
    else:
        try:
            hull = ConvexHull(gen_proj)
        except QhullError as exc:
            raise HullNumericalError(
                f"qhull failed on {len(gen)} generators of affine rank {rank}: {exc}"
            ) from exc
        eqs = hull.equations
        inside = (proj @ eqs[:, :rank].T + eqs[:, rank] <= eps).all(axis=1)
    inside[off_span] = False
    return inside


def alpha_closure(points: PointSet, xs: ElementSet, eps: float = DEFAULT_EPS) -> ElementSet:
    """Ground points lying in the convex hull of the member points."""
    idx = xs.members()
    if not idx:
        return xs
    inside = _hull_trace(points.coords, points.coords[idx], eps)
    inside[idx] = True
    return ElementSet.from_bool_array(points.ground, inside.astype(np.uint8))


class AlphaClosure:
    """Hull-trace closure operator of a fixed point set."""

    def __init__(self, points: PointSet, eps: float = DEFAULT_EPS):
        self.points = points
        self.eps = eps
        self.ground = points.ground

    def __call__(self, xs: ElementSet) -> ElementSet:
        return alpha_closure(self.points, xs, self.eps)

    def __repr__(self):
        return f"<alpha closure over {self.points!r}>"


def generate_d2_instance(
    d: int,
    n_per_class: int,
    margin: float = 0.05,
    seed: Optional[int] = None,
    spread: float = 0.5,
    separation: float = 0.5,
) -> tuple[PointSet, np.ndarray]:
    """Two point classes with disjoint convex hulls by construction.

    Draws a random unit normal and samples isotropic Gaussian points
    (std ``spread``), assigning the side by the signed distance to the
    hyperplane through the origin and rejecting points within
    ``margin`` of it; each accepted point is then pushed ``separation``
    further along the normal, away from the hyperplane. Each class
    receives exactly ``n_per_class`` points; labels are 1 for the
    positive side, 0 for the negative side.
    """
    if d < 1:
        raise ValueError("dimension must be >= 1")
    if n_per_class < 1:
        raise ValueError("n_per_class must be >= 1")
    if margin <= 0:
        raise ValueError("margin must be positive")
    rng = np.random.default_rng(seed)
    normal = rng.normal(size=d)
    normal /= np.linalg.norm(normal)
    rows = []
    labels = []
    need_pos = need_neg = n_per_class
    while need_pos or need_neg:
        batch = rng.normal(size=(max(64, n_per_class), d)) * spread
        side = batch @ normal
        for x, s in zip(batch, side):
            if s >= margin and need_pos:
                rows.append(x + separation * normal)
                labels.append(1)
                need_pos -= 1
            elif s <= -margin and need_neg:
                rows.append(x - separation * normal)
                labels.append(0)
                need_neg -= 1
            if not need_pos and not need_neg:
                break
    return PointSet(np.array(rows)), np.array(labels, dtype=np.uint8)
