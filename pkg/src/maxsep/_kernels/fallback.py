"""Pure-Python/numpy implementations of the graph kernels.

Mirrors the signatures of the compiled ``_graphcore`` extension; the
package selects one of the two at import time (see ``__init__``).
Distance matrices are int32 with -1 marking unreachable pairs.
"""

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

_BIG = np.int64(1) << 30


def bfs_all_pairs(indptr, indices, n):
    """Hop-count distance matrix of an unweighted undirected graph."""
    if n == 0:
        return np.zeros((0, 0), dtype=np.int32)
    data = np.ones(len(indices), dtype=np.int8)
    g = csr_matrix((data, indices, indptr), shape=(n, n))
    d = shortest_path(g, method="D", unweighted=True, directed=False)
    out = np.where(np.isinf(d), -1, d).astype(np.int32)
    return out


def interval_step(dist, mask):
    """One application of the shortest-path interval operator.

    Returns the uint8 mask of ``S union {w : exists u,v in S with
    d(u,w) + d(w,v) = d(u,v)}``.
    """
    out = mask.copy()
    members = np.flatnonzero(mask)
    k = len(members)
    if k == 0:
        return out
    d64 = dist.astype(np.int64)
    d64[d64 < 0] = _BIG
    dmm = d64[np.ix_(members, members)]
    dmw = d64[members]
    n = dist.shape[0]
    # pairwise sums chunked over the target axis to bound memory
    chunk = max(1, int(4_000_000 // (k * k + 1)))
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        sums = dmw[:, None, lo:hi] + dmw[None, :, lo:hi]
        hit = (sums == dmm[:, :, None]).any(axis=(0, 1))
        out[lo:hi] |= hit.astype(np.uint8)
    return out


def gamma_closure(dist, mask):
    """Least interval-closed superset: iterate interval_step to a fixpoint."""
    cur = mask.astype(np.uint8).copy()
    while True:
        nxt = interval_step(dist, cur)
        if np.array_equal(nxt, cur):
            return cur
        cur = nxt


def tree_steiner(indptr, indices, mask):
    """Vertex set of the minimal subtree spanning the masked vertices.

    Assumes the CSR adjacency describes a tree. Equals the geodesic
    closure on trees (unique shortest paths). Empty input stays empty.
    """
    n = len(indptr) - 1
    if not mask.any():
        return np.zeros(n, dtype=np.uint8)
    alive = np.ones(n, dtype=np.uint8)
    deg = (indptr[1:] - indptr[:-1]).astype(np.int64)
    stack = [v for v in range(n) if deg[v] <= 1 and not mask[v]]
    while stack:
        v = stack.pop()
        if not alive[v] or mask[v]:
            continue
        if deg[v] > 1:
            continue
        alive[v] = 0
        for u in indices[indptr[v]:indptr[v + 1]]:
            if alive[u]:
                deg[u] -= 1
                if deg[u] == 1 and not mask[u]:
                    stack.append(u)
    return alive
