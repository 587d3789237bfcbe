"""Geodesic convexity over graphs and graph-structured partitionings.

Closed vertex sets contain every vertex on every shortest path between
two of their members. On trees the closure of a set is the vertex set
of the minimal spanning subtree, computed by leaf pruning; on general
graphs it is the fixpoint of the shortest-path interval step. The hot
loops live in ``maxsep._kernels``.
"""

from __future__ import annotations

from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from . import _kernels as kernels
from .core import ElementSet, GroundSet

__all__ = [
    "Graph",
    "apsp",
    "interval",
    "gamma_closure",
    "GammaClosure",
    "PaschResult",
    "pasch_check",
    "k23_minor_free",
    "GSPartition",
    "sigma_closure",
    "SigmaClosure",
    "random_tree",
    "RatioUnsatisfiable",
    "random_tree_halfspace_labeling",
]


class Graph:
    """Undirected simple graph over vertices 0..n-1, stored as CSR
    sorted neighbor lists."""

    __slots__ = ("n", "indptr", "indices", "m", "_connected")

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray):
        self.n = n
        self.indptr = indptr
        self.indices = indices
        self.m = len(indices) // 2
        self._connected: Optional[bool] = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if v in adj[u]:
                raise ValueError(f"parallel edge ({u},{v})")
            adj[u].add(v)
            adj[v].add(u)
        indptr = np.zeros(n + 1, dtype=np.int32)
        flat: list[int] = []
        for v in range(n):
            flat.extend(sorted(adj[v]))
            indptr[v + 1] = len(flat)
        return cls(n, indptr, np.array(flat, dtype=np.int32))

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v in range(self.n):
            for u in self.neighbors(v):
                if v < u:
                    out.append((v, int(u)))
        return out

    def is_connected(self) -> bool:
        if self._connected is None:
            seen = np.zeros(self.n, dtype=bool)
            stack = [0]
            seen[0] = True
            while stack:
                v = stack.pop()
                for u in self.neighbors(v):
                    if not seen[u]:
                        seen[u] = True
                        stack.append(int(u))
            self._connected = bool(seen.all())
        return self._connected

    def is_tree(self) -> bool:
        return self.m == self.n - 1 and self.is_connected()

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def apsp(graph: Graph) -> np.ndarray:
    """All-pairs hop distances via BFS from every vertex; int32 matrix
    with -1 marking unreachable pairs."""
    return kernels.bfs_all_pairs(graph.indptr, graph.indices, graph.n)


def interval(graph: Graph, dist: np.ndarray, s: ElementSet) -> ElementSet:
    """One interval step: s plus every vertex w with d(u,w)+d(w,v) =
    d(u,v) for some members u, v (i.e. w on some shortest u-v path)."""
    out = kernels.interval_step(dist, s.to_bool_array())
    return ElementSet.from_bool_array(s.ground, out)


def gamma_closure(graph: Graph, dist: np.ndarray, s: ElementSet) -> ElementSet:
    """Least interval-closed superset of s (iterate interval to a
    fixpoint; at most n iterations, each adding a vertex)."""
    out = kernels.gamma_closure(dist, s.to_bool_array())
    return ElementSet.from_bool_array(s.ground, out)


class GammaClosure:
    """Geodesic closure operator of a connected graph.

    Trees get the linear-time Steiner-subtree kernel; other graphs use
    the interval fixpoint over the distance matrix (computed lazily and
    cached; the matrix is immutable afterwards, so instances are safe
    to share across concurrent readers).
    """

    def __init__(self, graph: Graph):
        if not graph.is_connected():
            raise ValueError(
                "geodesic closure is defined per connected graph; "
                "close components separately"
            )
        self.graph = graph
        self.ground = GroundSet(graph.n)
        self._tree = graph.is_tree()
        self._dist: Optional[np.ndarray] = None

    @property
    def dist(self) -> np.ndarray:
        if self._dist is None:
            self._dist = apsp(self.graph)
        return self._dist

    def __call__(self, xs: ElementSet) -> ElementSet:
        bits = xs.to_bool_array()
        if self._tree:
            out = kernels.tree_steiner(self.graph.indptr, self.graph.indices, bits)
        else:
            out = kernels.gamma_closure(self.dist, bits)
        return ElementSet.from_bool_array(self.ground, out)

    def __repr__(self):
        kind = "tree" if self._tree else "graph"
        return f"<gamma closure over {kind} n={self.graph.n}>"


class PaschResult(NamedTuple):
    holds: bool
    witness: Optional[tuple[int, int, int, int, int]]


def pasch_check(graph: Graph, max_n: int = 60) -> PaschResult:
    """Exhaustive Pasch-axiom scan.

    Checks, for all u,v,w and all x in gamma({u,v}), y in gamma({u,w}),
    that gamma({x,w}) and gamma({y,v}) intersect; the first violating
    quintuple is returned otherwise. Equivalent to the Kakutani
    property of the geodesic system. Costs O(n^2) pair closures plus an
    O(n^5)-ish scan, hence the size bound.
    """
    n = graph.n
    if n > max_n:
        raise ValueError(f"pasch_check bound exceeded: n={n} > {max_n}")
    if n > 63:
        raise ValueError("pasch_check packs closures into 64-bit masks; n <= 63")
    if not graph.is_connected():
        raise ValueError("pasch_check requires a connected graph")
    dist = apsp(graph)
    # closure of every vertex pair, as packed uint64 masks (n <= 60 < 64)
    pair_id = np.zeros((n, n), dtype=np.int32)
    closures = []
    members: list[np.ndarray] = []
    for u in range(n):
        for v in range(u, n):
            m = np.zeros(n, dtype=np.uint8)
            m[u] = 1
            m[v] = 1
            c = kernels.gamma_closure(dist, m)
            pid = len(closures)
            pair_id[u, v] = pair_id[v, u] = pid
            mask = 0
            for w in np.flatnonzero(c):
                mask |= 1 << int(w)
            closures.append(mask)
            members.append(np.flatnonzero(c))
    cl = np.array(closures, dtype=np.uint64)
    meets = (cl[:, None] & cl[None, :]) != 0
    for u in range(n):
        for v in range(n):
            if v == u:
                continue
            xs = members[pair_id[u, v]]
            for w in range(n):
                if w == u or w == v:
                    continue
                ys = members[pair_id[u, w]]
                sub = meets[np.ix_(pair_id[xs, w], pair_id[ys, v])]
                if not sub.all():
                    i, j = np.argwhere(~sub)[0]
                    return PaschResult(False, (u, v, w, int(xs[i]), int(ys[j])))
    return PaschResult(True, None)


def _vertex_disjoint_paths_at_least(graph: Graph, s: int, t: int, k: int) -> bool:
    """True when there are >= k internally vertex-disjoint s-t paths
    that avoid a direct s-t edge (unit-capacity flow on split vertices)."""
    n = graph.n
    # node ids: 2v = in, 2v+1 = out; s uses only its out node, t its in node
    cap: dict[tuple[int, int], int] = {}
    adj: dict[int, list[int]] = {}

    def add(a: int, b: int):
        if (a, b) not in cap:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
            cap[(b, a)] = 0
        cap[(a, b)] = cap.get((a, b), 0) + 1

    for v in range(n):
        if v != s and v != t:
            add(2 * v, 2 * v + 1)
    for u, v in graph.edges():
        if {u, v} == {s, t}:
            continue
        add(2 * u + 1, 2 * v)
        add(2 * v + 1, 2 * u)
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while flow < k:
        parent = {source: None}
        queue = [source]
        while queue and sink not in parent:
            cur = queue.pop(0)
            for nxt in adj.get(cur, ()):
                if nxt not in parent and cap.get((cur, nxt), 0) > 0:
                    parent[nxt] = cur
                    queue.append(nxt)
        if sink not in parent:
            return False
        node = sink
        while parent[node] is not None:
            prev = parent[node]
            cap[(prev, node)] -= 1
            cap[(node, prev)] += 1
            node = prev
        flow += 1
    return True


def k23_minor_free(graph: Graph, max_n: int = 15) -> bool:
    """Decide absence of a K_{2,3} minor.

    K_{2,3} has maximum degree 3, so it occurs as a minor exactly when
    it occurs as a subdivision: two vertices joined by three internally
    disjoint paths of length >= 2. That is a unit-capacity flow test
    per vertex pair (the direct edge, being the only length-1 path, is
    dropped first).
    """
    if graph.n > max_n:
        raise ValueError(f"k23_minor_free bound exceeded: n={graph.n} > {max_n}")
    if graph.n < 5 or graph.m < 6:
        return True
    for s in range(graph.n):
        for t in range(s + 1, graph.n):
            if _vertex_disjoint_paths_at_least(graph, s, t, 3):
                return False
    return True


class GSPartition:
    """Graph-structured partitioning: each vertex of the host graph
    carries a non-empty bag, the bags partition the ground set."""

    def __init__(self, graph: Graph, bags: Sequence[Iterable[int]]):
        if len(bags) != graph.n:
            raise ValueError("need exactly one bag per vertex")
        self.graph = graph
        self.bags = [tuple(sorted(b)) for b in bags]
        size = sum(len(b) for b in self.bags)
        owner = np.full(size, -1, dtype=np.int32)
        for v, bag in enumerate(self.bags):
            if not bag:
                raise ValueError(f"bag of vertex {v} is empty")
            for e in bag:
                if not 0 <= e < size or owner[e] != -1:
                    raise ValueError("bags must partition 0..|S|-1")
                owner[e] = v
        self.size = size
        self.owner = owner
        self.ground = GroundSet(size)
        self._bag_matrix = np.zeros((graph.n, size), dtype=np.uint8)
        for v, bag in enumerate(self.bags):
            self._bag_matrix[v, list(bag)] = 1
        self._gamma = GammaClosure(graph)

    def touched_vertices(self, s_prime: ElementSet) -> np.ndarray:
        bits = s_prime.to_bool_array()
        vmask = np.zeros(self.graph.n, dtype=np.uint8)
        vmask[self.owner[np.flatnonzero(bits)]] = 1
        return vmask

    def __repr__(self):
        return f"GSPartition(n={self.graph.n}, |S|={self.size})"


def sigma_closure(gsp: GSPartition, s_prime: ElementSet) -> ElementSet:
    """Union of bags over the geodesic closure of the touched vertices."""
    vmask = gsp.touched_vertices(s_prime)
    vset = ElementSet.from_bool_array(gsp._gamma.ground, vmask)
    closed = gsp._gamma(vset).to_bool_array().astype(bool)
    out = gsp._bag_matrix[closed].any(axis=0).astype(np.uint8)
    return ElementSet.from_bool_array(gsp.ground, out)


class SigmaClosure:
    """Closure operator induced on the ground set of a GSP."""

    def __init__(self, gsp: GSPartition):
        self.gsp = gsp
        self.ground = gsp.ground

    def __call__(self, xs: ElementSet) -> ElementSet:
        return sigma_closure(self.gsp, xs)

    def __repr__(self):
        return f"<sigma closure over {self.gsp!r}>"


def random_tree(n: int, seed: int) -> Graph:
    """Uniform random labeled tree by decoding a random Pruefer sequence."""
    if n < 2:
        raise ValueError("random_tree needs n >= 2")
    rng = np.random.default_rng(seed)
    if n == 2:
        return Graph.from_edges(2, [(0, 1)])
    seq = rng.integers(0, n, size=n - 2)
    degree = np.ones(n, dtype=np.int64)
    for x in seq:
        degree[x] += 1
    edges = []
    ptr = int(np.argmax(degree == 1))
    leaf = ptr
    for x in seq:
        x = int(x)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1 and x < ptr:
            leaf = x
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges.append((leaf, n - 1))
    return Graph.from_edges(n, edges)


class RatioUnsatisfiable(RuntimeError):
    """No tree edge splits the vertices within the required ratio; the
    caller is expected to resample the tree."""


def random_tree_halfspace_labeling(
    graph: Graph, seed: int, ratio_bound: float = 3.0
) -> tuple[ElementSet, ElementSet]:
    """Cut a uniformly chosen tree edge whose two components have size
    ratio within [1/ratio_bound, ratio_bound]; the components are
    complementary geodesic half-spaces."""
    if not graph.is_tree():
        raise ValueError("labeling requires a tree")
    n = graph.n
    parent = np.full(n, -1, dtype=np.int64)
    order = []
    seen = np.zeros(n, dtype=bool)
    stack = [0]
    seen[0] = True
    while stack:
        v = stack.pop()
        order.append(v)
        for u in graph.neighbors(v):
            u = int(u)
            if not seen[u]:
                seen[u] = True
                parent[u] = v
                stack.append(u)
    size = np.ones(n, dtype=np.int64)
    for v in reversed(order):
        if parent[v] >= 0:
            size[parent[v]] += size[v]
    candidates = []
    for v in range(n):
        if parent[v] >= 0:
            a = int(size[v])
            b = n - a
            if a * ratio_bound >= b and b * ratio_bound >= a:
                candidates.append(v)
    if not candidates:
        raise RatioUnsatisfiable(
            f"no edge of this {n}-vertex tree splits within ratio {ratio_bound}"
        )
    rng = np.random.default_rng(seed)
    root_of_cut = candidates[int(rng.integers(len(candidates)))]
    ground = GroundSet(n)
    comp = np.zeros(n, dtype=np.uint8)
    stack = [root_of_cut]
    comp[root_of_cut] = 1
    while stack:
        v = stack.pop()
        for u in graph.neighbors(v):
            u = int(u)
            if u != parent[v] and not comp[u] and parent[u] == v:
                comp[u] = 1
                stack.append(u)
    lr = ElementSet.from_bool_array(ground, comp)
    return lr, lr.complement()
