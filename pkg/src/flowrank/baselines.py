"""Reference ranking algorithms: rooted PageRank and depth-limited flow.

Both walk the same undirected multigraph as the main engine and are used as
comparison baselines by the evaluation harness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidConfigError, NodeNotFoundError
from .model import EcosystemGraph


@dataclass
class RPRConfig:
    """Rooted PageRank parameters.

    ``alpha`` is read as the restart probability by default; the published
    prose can also be read as the follow probability, so ``alpha_is_follow``
    flips the interpretation (restart = 1 - alpha).
    """

    alpha: float = 0.15
    tolerance: float = 1.0e-6
    max_iterations: int = 100
    alpha_is_follow: bool = False

    def validate(self) -> None:
        if not (0.0 < self.alpha < 1.0):
            raise InvalidConfigError(f"alpha must be in (0, 1), got {self.alpha}")
        if self.tolerance <= 0.0:
            raise InvalidConfigError("tolerance must be positive")
        if self.max_iterations < 1:
            raise InvalidConfigError("max_iterations must be >= 1")

    @property
    def restart_probability(self) -> float:
        return 1.0 - self.alpha if self.alpha_is_follow else self.alpha


@dataclass
class PropFlowConfig:
    depth: int = 10

    def validate(self) -> None:
        if self.depth < 0:
            raise InvalidConfigError("depth must be >= 0")


@dataclass
class RPRResult:
    scores: dict[str, float]
    iterations: int
    converged: bool


def rooted_pagerank(g: EcosystemGraph, s: str, cfg: RPRConfig | None = None) -> RPRResult:
    """Stationary distribution of a restarting random walk from ``s``.

    Each step either restarts at the source (with the restart probability) or
    moves to a neighbor chosen proportionally to edge weight, parallel edges
    counting individually. Nodes without edges hand their mass back to the
    source. Power iteration stops when the L1 change drops below the
    tolerance; hitting the iteration cap flags the result as non-converged
    but still returns it.
    """
    cfg = cfg or RPRConfig()
    cfg.validate()
    if s not in g:
        raise NodeNotFoundError(s)
    csr = g.csr()
    n = csr.node_count
    source = csr.node_index[s]
    restart = cfg.restart_probability

    rows = np.repeat(np.arange(n, dtype=np.int64), np.diff(csr.indptr))
    weight_totals = np.bincount(rows, weights=csr.weights, minlength=n).astype(
        np.float64, copy=False
    )
    has_out = weight_totals > 0.0
    share = np.zeros(len(csr.weights), dtype=np.float64)
    if len(csr.weights):
        share = csr.weights / weight_totals[rows]

    pi = np.zeros(n, dtype=np.float64)
    pi[source] = 1.0
    follow = 1.0 - restart
    converged = False
    iterations = 0
    for iterations in range(1, cfg.max_iterations + 1):
        pushed = np.bincount(csr.indices, weights=pi[rows] * share, minlength=n).astype(
            np.float64, copy=False
        )
        dangling_mass = float(pi[~has_out].sum())
        nxt = follow * pushed
        nxt[source] += follow * dangling_mass + restart
        delta = float(np.abs(nxt - pi).sum())
        pi = nxt
        if delta < cfg.tolerance:
            converged = True
            break
    scores = {node_id: float(pi[i]) for i, node_id in enumerate(csr.node_ids)}
    return RPRResult(scores, iterations, converged)


def propflow(g: EcosystemGraph, s: str, cfg: PropFlowConfig | None = None) -> dict[str, float]:
    """Depth-limited flow: breadth-first from ``s``, pushing strictly deeper.

    The source starts with flow 1; in breadth-first depth order each node
    forwards its accumulated inflow to neighbors exactly one level deeper,
    proportionally to edge weight. No restarts, no convergence loop; nodes
    beyond the depth cap score 0.
    """
    cfg = cfg or PropFlowConfig()
    cfg.validate()
    if s not in g:
        raise NodeNotFoundError(s)
    depth: dict[str, int] = {s: 0}
    order: list[str] = [s]
    head = 0
    while head < len(order):
        node = order[head]
        head += 1
        if depth[node] == cfg.depth:
            continue
        for nbr, _ in g.adjacency(node):
            if nbr not in depth:
                depth[nbr] = depth[node] + 1
                order.append(nbr)
    flow = {node_id: 0.0 for node_id in g.node_ids()}
    flow[s] = 1.0
    for node in order:
        here = depth[node]
        if here >= cfg.depth:
            continue
        downhill = [
            (nbr, g.edge(edge_id).weight)
            for nbr, edge_id in g.adjacency(node)
            if depth.get(nbr) == here + 1
        ]
        if not downhill:
            continue
        total = sum(weight for _, weight in downhill)
        outbound = flow[node]
        for nbr, weight in downhill:
            flow[nbr] += outbound * weight / total
    return flow
