"""Literal branch-set search for a K_{2,3} minor, used to cross-check
the flow-based detector at tiny sizes: five disjoint connected vertex
sets, two on one side and three on the other, with every cross pair
joined by an edge."""

from itertools import combinations


def _connected_subsets(graph):
    n = graph.n
    adj = [0] * n
    for u, v in graph.edges():
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    out = []
    for mask in range(1, 1 << n):
        start = (mask & -mask).bit_length() - 1
        seen = 1 << start
        frontier = [start]
        while frontier:
            v = frontier.pop()
            nxt = adj[v] & mask & ~seen
            while nxt:
                low = nxt & -nxt
                seen |= low
                frontier.append(low.bit_length() - 1)
                nxt ^= low
        if seen == mask:
            out.append(mask)
    return out, adj


def has_k23_minor_brute(graph) -> bool:
    subsets, adj = _connected_subsets(graph)
    nb = {}
    for s in subsets:
        acc = 0
        m = s
        while m:
            low = m & -m
            acc |= adj[low.bit_length() - 1]
            m ^= low
        nb[s] = acc & ~s
    for a1 in subsets:
        for a2 in subsets:
            if a1 & a2:
                continue
            used = a1 | a2
            cands = [
                s for s in subsets
                if not s & used and nb[s] & a1 and nb[s] & a2
            ]
            for b1, b2, b3 in combinations(cands, 3):
                if not (b1 & b2 or b1 & b3 or b2 & b3):
                    return True
    return False
