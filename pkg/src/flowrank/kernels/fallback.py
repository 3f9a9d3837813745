"""NumPy implementations of the scoring kernels.

Semantically identical to the compiled versions in ``_speedups``: breadth-
first tiers, shortest-edge marking, and tier-ordered flow push over the
half-edge CSR arrays. Selected at import time when the extension is missing
or disabled.
"""

from __future__ import annotations

import numpy as np


def _gather_positions(indptr: np.ndarray, frontier: np.ndarray):
    """Absolute CSR positions of all adjacency entries of ``frontier`` rows.

    Returns (positions, owners) where owners[k] is the row that produced
    positions[k].
    """
    starts = indptr[frontier]
    counts = indptr[frontier + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    owners = np.repeat(frontier.astype(np.int64), counts)
    shift = starts - np.concatenate(([0], np.cumsum(counts)[:-1]))
    positions = np.arange(total, dtype=np.int64) + np.repeat(shift, counts)
    return positions, owners


def bfs_tiers(indptr: np.ndarray, indices: np.ndarray, source: int) -> np.ndarray:
    """Hop distance from ``source`` per node; -1 for unreachable nodes."""
    n = indptr.shape[0] - 1
    dist = np.full(n, -1, dtype=np.int32)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    level = 0
    while frontier.size:
        positions, _ = _gather_positions(indptr, frontier)
        if positions.size == 0:
            break
        nbrs = indices[positions]
        fresh = np.unique(nbrs[dist[nbrs] < 0])
        if fresh.size == 0:
            break
        level += 1
        dist[fresh] = level
        frontier = fresh.astype(np.int64)
    return dist


def mark_uniform(indptr: np.ndarray, indices: np.ndarray, dist: np.ndarray):
    """Mark half-edges that step exactly one tier away from the source.

    Returns (mask uint8 per half-edge, marked out-degree int64 per node).
    Self-loops and edges inside a tier are never marked, so the marked edges
    form a DAG layered by tier.
    """
    n = indptr.shape[0] - 1
    rows = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
    dist_row = dist[rows]
    selected = (dist_row >= 0) & (dist[indices] == dist_row + 1)
    out_counts = np.bincount(rows[selected], minlength=n).astype(np.int64)
    return selected.astype(np.uint8), out_counts


def flow_push(
    indptr: np.ndarray,
    indices: np.ndarray,
    mask: np.ndarray,
    out_counts: np.ndarray,
    order: np.ndarray,
    dist: np.ndarray,
    source: int,
    gamma: float,
) -> np.ndarray:
    """Propagate discounted flow along marked edges in tier order.

    Each node splits ``gamma * flow`` equally over its marked out-edges
    (parallel edges each count); ``order`` must list reachable nodes in
    non-decreasing tier order starting at ``source``.
    """
    n = indptr.shape[0] - 1
    flow = np.zeros(n, dtype=np.float64)
    flow[source] = 1.0
    selected = mask.view(bool)
    for tier_nodes in _tier_groups(order, dist):
        positions, owners = _gather_positions(indptr, tier_nodes)
        keep = selected[positions]
        if not keep.any():
            continue
        pos = positions[keep]
        src = owners[keep]
        contrib = gamma * flow[src] / out_counts[src]
        flow += np.bincount(indices[pos], weights=contrib, minlength=n)
    return flow


def flow_push_weighted(
    indptr: np.ndarray,
    indices: np.ndarray,
    mask: np.ndarray,
    weights: np.ndarray,
    weight_sums: np.ndarray,
    order: np.ndarray,
    dist: np.ndarray,
    source: int,
    gamma: float,
) -> np.ndarray:
    """Weight-proportional variant of :func:`flow_push`."""
    n = indptr.shape[0] - 1
    flow = np.zeros(n, dtype=np.float64)
    flow[source] = 1.0
    selected = mask.view(bool)
    for tier_nodes in _tier_groups(order, dist):
        positions, owners = _gather_positions(indptr, tier_nodes)
        keep = selected[positions]
        if not keep.any():
            continue
        pos = positions[keep]
        src = owners[keep]
        contrib = gamma * flow[src] * weights[pos] / weight_sums[src]
        flow += np.bincount(indices[pos], weights=contrib, minlength=n)
    return flow


def _tier_groups(order: np.ndarray, dist: np.ndarray):
    if order.size == 0:
        return
    levels = dist[order]
    boundaries = np.flatnonzero(np.diff(levels)) + 1
    for group in np.split(order.astype(np.int64), boundaries):
        yield group
