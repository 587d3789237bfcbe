import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from maxsep.graphs import Graph
from maxsep.lattices import build_lattice


def random_connected_graph(n: int, rng: np.random.Generator, p: float = 0.4) -> Graph:
    """Rejection-sample a connected simple graph on n vertices."""
    while True:
        edges = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < p
        ]
        g = Graph.from_edges(n, edges)
        if g.is_connected():
            return g


def boolean_lattice(k: int):
    n = 1 << k
    edges = []
    for x in range(n):
        for b in range(k):
            if not (x >> b) & 1:
                edges.append((x, x | (1 << b)))
    return build_lattice(n, edges)


def diamond_m3():
    return build_lattice(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])


def pentagon_n5():
    # 0 < 1 < 4 and 0 < 2 < 3 < 4
    return build_lattice(5, [(0, 1), (1, 4), (0, 2), (2, 3), (3, 4)])


def k23_graph() -> Graph:
    return Graph.from_edges(5, [(a, b) for a in (0, 1) for b in (2, 3, 4)])


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
