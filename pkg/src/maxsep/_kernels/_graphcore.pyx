# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled graph kernels: BFS all-pairs distances, shortest-path interval
closure, and tree Steiner spans. Signatures mirror ``fallback``."""

import numpy as np

cimport cython


def bfs_all_pairs(indptr_in, indices_in, int n):
    cdef int[::1] indptr = np.ascontiguousarray(indptr_in, dtype=np.int32)
    cdef int[::1] indices = np.ascontiguousarray(indices_in, dtype=np.int32)
    out_arr = np.full((n, n), -1, dtype=np.int32)
    cdef int[:, ::1] out = out_arr
    queue_arr = np.empty(n, dtype=np.int32)
    cdef int[::1] queue = queue_arr
    cdef int src, head, tail, v, u, k, dv
    for src in range(n):
        head = 0
        tail = 0
        out[src, src] = 0
        queue[tail] = src
        tail += 1
        while head < tail:
            v = queue[head]
            head += 1
            dv = out[src, v]
            for k in range(indptr[v], indptr[v + 1]):
                u = indices[k]
                if out[src, u] < 0:
                    out[src, u] = dv + 1
                    queue[tail] = u
                    tail += 1
    return out_arr


cdef int _interval_pass(const int[:, ::1] dist, unsigned char[::1] cur,
                        int[::1] members, int n) nogil:
    """Add every vertex on a shortest path between two current members.
    Returns the number of vertices added. ``members`` is scratch space."""
    cdef int k = 0
    cdef int w, i, j, u, v, duw, dwv, added
    for w in range(n):
        if cur[w]:
            members[k] = w
            k += 1
    added = 0
    for w in range(n):
        if cur[w]:
            continue
        for i in range(k):
            u = members[i]
            duw = dist[u, w]
            if duw < 0:
                continue
            for j in range(k):
                v = members[j]
                dwv = dist[w, v]
                if dwv >= 0 and duw + dwv == dist[u, v]:
                    cur[w] = 2  # mark new, promoted after the scan
                    added += 1
                    break
            if cur[w]:
                break
    for w in range(n):
        if cur[w] == 2:
            cur[w] = 1
    return added


def interval_step(dist_in, mask_in):
    cdef const int[:, ::1] dist = np.ascontiguousarray(dist_in, dtype=np.int32)
    out_arr = np.array(mask_in, dtype=np.uint8)
    cdef unsigned char[::1] out = out_arr
    cdef int n = dist.shape[0]
    scratch = np.empty(n, dtype=np.int32)
    cdef int[::1] members = scratch
    with nogil:
        _interval_pass(dist, out, members, n)
    return out_arr


def gamma_closure(dist_in, mask_in):
    cdef const int[:, ::1] dist = np.ascontiguousarray(dist_in, dtype=np.int32)
    out_arr = np.array(mask_in, dtype=np.uint8)
    cdef unsigned char[::1] out = out_arr
    cdef int n = dist.shape[0]
    scratch = np.empty(n, dtype=np.int32)
    cdef int[::1] members = scratch
    cdef int added = 1
    with nogil:
        while added > 0:
            added = _interval_pass(dist, out, members, n)
    return out_arr


def tree_steiner(indptr_in, indices_in, mask_in):
    cdef int[::1] indptr = np.ascontiguousarray(indptr_in, dtype=np.int32)
    cdef int[::1] indices = np.ascontiguousarray(indices_in, dtype=np.int32)
    cdef unsigned char[::1] mask = np.ascontiguousarray(mask_in, dtype=np.uint8)
    cdef int n = len(indptr_in) - 1
    alive_arr = np.ones(n, dtype=np.uint8)
    cdef unsigned char[::1] alive = alive_arr
    deg_arr = np.empty(n, dtype=np.int32)
    cdef int[::1] deg = deg_arr
    stack_arr = np.empty(n, dtype=np.int32)
    cdef int[::1] stack = stack_arr
    cdef int top = 0
    cdef int v, u, k, any_member
    any_member = 0
    for v in range(n):
        if mask[v]:
            any_member = 1
            break
    if not any_member:
        return np.zeros(n, dtype=np.uint8)
    with nogil:
        for v in range(n):
            deg[v] = indptr[v + 1] - indptr[v]
            if deg[v] <= 1 and not mask[v]:
                stack[top] = v
                top += 1
        while top > 0:
            top -= 1
            v = stack[top]
            if not alive[v] or mask[v] or deg[v] > 1:
                continue
            alive[v] = 0
            for k in range(indptr[v], indptr[v + 1]):
                u = indices[k]
                if alive[u]:
                    deg[u] -= 1
                    if deg[u] == 1 and not mask[u]:
                        stack[top] = u
                        top += 1
    return alive_arr
