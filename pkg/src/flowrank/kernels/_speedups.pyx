# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled scoring kernels: BFS tiers, shortest-edge marking, flow push.

Mirrors ``flowrank.kernels.fallback`` exactly; see that module for the
semantics of each function.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def bfs_tiers(const cnp.int64_t[::1] indptr, const cnp.int32_t[::1] indices, Py_ssize_t source):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    dist_arr = np.full(n, -1, dtype=np.int32)
    queue_arr = np.empty(n, dtype=np.int64)
    cdef cnp.int32_t[::1] dist = dist_arr
    cdef cnp.int64_t[::1] queue = queue_arr
    cdef Py_ssize_t head = 0, tail = 0, u, j
    cdef cnp.int32_t v
    dist[source] = 0
    queue[tail] = source
    tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        for j in range(indptr[u], indptr[u + 1]):
            v = indices[j]
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue[tail] = v
                tail += 1
    return dist_arr


def mark_uniform(
    const cnp.int64_t[::1] indptr,
    const cnp.int32_t[::1] indices,
    const cnp.int32_t[::1] dist,
):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t m2 = indices.shape[0]
    mask_arr = np.zeros(m2, dtype=np.uint8)
    od_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.uint8_t[::1] mask = mask_arr
    cdef cnp.int64_t[::1] od = od_arr
    cdef Py_ssize_t u, j
    cdef cnp.int32_t du
    for u in range(n):
        du = dist[u]
        if du < 0:
            continue
        for j in range(indptr[u], indptr[u + 1]):
            if dist[indices[j]] == du + 1:
                mask[j] = 1
                od[u] += 1
    return mask_arr, od_arr


def flow_push(
    const cnp.int64_t[::1] indptr,
    const cnp.int32_t[::1] indices,
    const cnp.uint8_t[::1] mask,
    const cnp.int64_t[::1] out_counts,
    const cnp.int32_t[::1] order,
    const cnp.int32_t[::1] dist,
    Py_ssize_t source,
    double gamma,
):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    flow_arr = np.zeros(n, dtype=np.float64)
    cdef double[::1] flow = flow_arr
    cdef Py_ssize_t k, u, j
    cdef double share
    flow[source] = 1.0
    for k in range(order.shape[0]):
        u = order[k]
        if out_counts[u] == 0:
            continue
        share = gamma * flow[u] / out_counts[u]
        for j in range(indptr[u], indptr[u + 1]):
            if mask[j]:
                flow[indices[j]] += share
    return flow_arr


def flow_push_weighted(
    const cnp.int64_t[::1] indptr,
    const cnp.int32_t[::1] indices,
    const cnp.uint8_t[::1] mask,
    const double[::1] weights,
    const double[::1] weight_sums,
    const cnp.int32_t[::1] order,
    const cnp.int32_t[::1] dist,
    Py_ssize_t source,
    double gamma,
):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    flow_arr = np.zeros(n, dtype=np.float64)
    cdef double[::1] flow = flow_arr
    cdef Py_ssize_t k, u, j
    cdef double scaled
    flow[source] = 1.0
    for k in range(order.shape[0]):
        u = order[k]
        if weight_sums[u] == 0.0:
            continue
        scaled = gamma * flow[u] / weight_sums[u]
        for j in range(indptr[u], indptr[u + 1]):
            if mask[j]:
                flow[indices[j]] += scaled * weights[j]
    return flow_arr
