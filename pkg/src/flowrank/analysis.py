"""Network analysis and discounted flow propagation.

Two analysis variants turn the undirected multigraph into a DAG plus a node
processing order:

* distance variant ("d"): one-to-many shortest-path search keeps exactly the
  edges lying on some shortest path from the root, directed away from it;
* topology variant ("t"): orients every reachable edge by breadth-first
  discovery order (or removes an approximate feedback arc set when the input
  is already directed), then topologically sorts the result.

Flow then trickles down the DAG: each node splits ``gamma`` times its value
over its outgoing edges, so a node's score is the discounted path mass that
reaches it from the root.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Union

import numpy as np

from . import kernels
from .errors import GammaOutOfRangeError, NodeNotFoundError
from .model import CsrView, EcosystemGraph

VARIANT_DISTANCE = "d"
VARIANT_TOPOLOGY = "t"


@dataclass
class AnalysisResult:
    """Node ordering plus the filtered, directed edge set it was built from.

    ``prime_edges`` holds (src, dst, edge_id) triples; ``distances`` is only
    set by the distance variant.
    """

    delta: list[str]
    prime_edges: set[tuple[str, str, str]]
    distances: Optional[dict[str, float]] = None


@dataclass
class FlowResult:
    scores: dict[str, float]
    gamma: float
    variant: str


class DirectedMultigraph:
    """Minimal directed multigraph used by the DAG-construction steps."""

    def __init__(self):
        self._nodes: dict[str, None] = {}
        self._edges: dict[str, tuple[str, str]] = {}
        self._out: dict[str, list[tuple[str, str]]] = {}
        self._in: dict[str, list[tuple[str, str]]] = {}

    def __contains__(self, node_id: str) -> bool:
        return node_id in self._nodes

    @property
    def node_count(self) -> int:
        return len(self._nodes)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def add_node(self, node_id: str) -> None:
        if node_id not in self._nodes:
            self._nodes[node_id] = None
            self._out[node_id] = []
            self._in[node_id] = []

    def add_edge(self, edge_id: str, src: str, dst: str) -> None:
        if edge_id in self._edges:
            raise ValueError(f"duplicate edge id {edge_id!r}")
        self.add_node(src)
        self.add_node(dst)
        self._edges[edge_id] = (src, dst)
        self._out[src].append((dst, edge_id))
        self._in[dst].append((src, edge_id))

    def node_ids(self) -> Iterator[str]:
        return iter(self._nodes)

    def edge_items(self) -> Iterator[tuple[str, tuple[str, str]]]:
        return iter(self._edges.items())

    def out_edges(self, node_id: str) -> list[tuple[str, str]]:
        return sorted(self._out[node_id])

    def in_edges(self, node_id: str) -> list[tuple[str, str]]:
        return sorted(self._in[node_id])

    def successors(self, node_id: str) -> list[str]:
        return sorted({dst for dst, _ in self._out[node_id]})

    def without_edges(self, edge_ids: set[str]) -> "DirectedMultigraph":
        pruned = DirectedMultigraph()
        for node_id in self._nodes:
            pruned.add_node(node_id)
        for edge_id, (src, dst) in self._edges.items():
            if edge_id not in edge_ids:
                pruned.add_edge(edge_id, src, dst)
        return pruned


def _check_gamma(gamma: float) -> None:
    if not (0.0 < gamma < 1.0):
        raise GammaOutOfRangeError(f"discount factor must be in (0, 1), got {gamma}")


def extended_dijkstra(g: EcosystemGraph, s: str) -> AnalysisResult:
    """One-to-many shortest paths that also marks every shortest-path edge.

    A strictly better path to a node resets its marked incoming edges; an
    equal-cost alternative adds to them. Ties in the priority queue break on
    node id, so the ordering is deterministic.
    """
    if s not in g:
        raise NodeNotFoundError(s)
    dist: dict[str, float] = {s: 0.0}
    marked: dict[str, set[tuple[str, str, str]]] = {}
    finished: set[str] = set()
    delta: list[str] = []
    heap: list[tuple[float, str]] = [(0.0, s)]
    while heap:
        d, n = heapq.heappop(heap)
        if n in finished:
            continue
        finished.add(n)
        delta.append(n)
        for nbr, edge_id in g.adjacency(n):
            alt = d + g.edge(edge_id).cost
            cur = dist.get(nbr)
            if cur is None or alt < cur:
                dist[nbr] = alt
                heapq.heappush(heap, (alt, nbr))
                marked[nbr] = {(n, nbr, edge_id)}
            elif alt == cur:
                marked[nbr].add((n, nbr, edge_id))
    prime_edges: set[tuple[str, str, str]] = set()
    for edges in marked.values():
        prime_edges.update(edges)
    return AnalysisResult(delta, prime_edges, dist)


def _tier_order(dist: np.ndarray) -> np.ndarray:
    reachable = np.flatnonzero(dist >= 0).astype(np.int32)
    return reachable[np.argsort(dist[reachable], kind="stable")]


def _bfs_analysis(csr: CsrView, source_index: int):
    dist = kernels.bfs_tiers(csr.indptr, csr.indices, source_index)
    mask, out_counts = kernels.mark_uniform(csr.indptr, csr.indices, dist)
    order = _tier_order(dist)
    return dist, mask, out_counts, order


def analyze_network_d(g: EcosystemGraph, s: str) -> AnalysisResult:
    """Distance-variant analysis; substitutes BFS when all costs are equal."""
    if s not in g:
        raise NodeNotFoundError(s)
    csr = g.csr()
    if csr.uniform_cost is None:
        return extended_dijkstra(g, s)
    dist, mask, _, order = _bfs_analysis(csr, csr.node_index[s])
    ids = csr.node_ids
    delta = [ids[i] for i in order]
    rows = np.repeat(np.arange(len(ids), dtype=np.int64), np.diff(csr.indptr))
    prime_edges = set()
    for j in np.flatnonzero(mask):
        prime_edges.add(
            (ids[rows[j]], ids[csr.indices[j]], csr.edge_ids[csr.edge_index[j]])
        )
    # accumulate tier costs additively so values match Dijkstra's bit for bit
    cost = csr.uniform_cost
    tier_cost = [0.0]
    max_tier = int(dist[order[-1]]) if order.size else 0
    for _ in range(max_tier):
        tier_cost.append(tier_cost[-1] + cost)
    distances = {ids[i]: tier_cost[dist[i]] for i in order}
    return AnalysisResult(delta, prime_edges, distances)


def orient_by_bfs(g: EcosystemGraph, s: str) -> DirectedMultigraph:
    """Direct every reachable non-loop edge from earlier to later discovery.

    The global discovery-index order makes the result acyclic; self-loops and
    edges between unreachable nodes are dropped.
    """
    if s not in g:
        raise NodeNotFoundError(s)
    discovery: dict[str, int] = {s: 0}
    queue = deque([s])
    while queue:
        n = queue.popleft()
        for nbr, _ in g.adjacency(n):
            if nbr not in discovery:
                discovery[nbr] = len(discovery)
                queue.append(nbr)
    dag = DirectedMultigraph()
    for node_id in discovery:
        dag.add_node(node_id)
    for edge in g.edges():
        if edge.u == edge.v:
            continue
        iu = discovery.get(edge.u)
        iv = discovery.get(edge.v)
        if iu is None or iv is None:
            continue
        if iu < iv:
            dag.add_edge(edge.edge_id, edge.u, edge.v)
        else:
            dag.add_edge(edge.edge_id, edge.v, edge.u)
    return dag


def eades_feedback_arc_set(dg: DirectedMultigraph) -> set[str]:
    """Greedy feedback arc set via the sink/source/max-degree-delta peel.

    Vertices are peeled to a sequence (sinks to the back, sources to the
    front, otherwise the vertex maximizing outdeg - indeg); edges pointing
    backward in that sequence, plus all self-loops, form the returned set.
    Removing them leaves a DAG.
    """
    fas: set[str] = set()
    outdeg: dict[str, int] = {v: 0 for v in dg.node_ids()}
    indeg: dict[str, int] = {v: 0 for v in dg.node_ids()}
    out_adj: dict[str, list[tuple[str, str]]] = {v: [] for v in dg.node_ids()}
    in_adj: dict[str, list[tuple[str, str]]] = {v: [] for v in dg.node_ids()}
    for edge_id, (src, dst) in dg.edge_items():
        if src == dst:
            fas.add(edge_id)
            continue
        outdeg[src] += 1
        indeg[dst] += 1
        out_adj[src].append((dst, edge_id))
        in_adj[dst].append((src, edge_id))

    remaining = set(dg.node_ids())
    removed: set[str] = set()
    front: list[str] = []
    back: deque[str] = deque()
    sink_heap = [v for v in remaining if outdeg[v] == 0]
    source_heap = [v for v in remaining if indeg[v] == 0 and outdeg[v] > 0]
    heapq.heapify(sink_heap)
    heapq.heapify(source_heap)

    def take(heap: list[str], degrees: dict[str, int]) -> Optional[str]:
        while heap:
            cand = heapq.heappop(heap)
            if cand not in removed and degrees[cand] == 0:
                return cand
        return None

    while remaining:
        v = take(sink_heap, outdeg)
        if v is not None:
            back.appendleft(v)
        else:
            v = take(source_heap, indeg)
            if v is None:
                v = max(sorted(remaining), key=lambda c: outdeg[c] - indeg[c])
            front.append(v)
        remaining.discard(v)
        removed.add(v)
        for w, _ in out_adj[v]:
            if w not in removed:
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(source_heap, w)
        for w, _ in in_adj[v]:
            if w not in removed:
                outdeg[w] -= 1
                if outdeg[w] == 0:
                    heapq.heappush(sink_heap, w)

    position = {v: i for i, v in enumerate(front + list(back))}
    for edge_id, (src, dst) in dg.edge_items():
        if src != dst and position[src] > position[dst]:
            fas.add(edge_id)
    return fas


def topological_sort(dg: DirectedMultigraph) -> list[str]:
    """Depth-first topological order (reversed finishing order)."""
    visited: set[str] = set()
    finished: list[str] = []
    for root in dg.node_ids():
        if root in visited:
            continue
        visited.add(root)
        stack: list[tuple[str, Iterator[str]]] = [(root, iter(dg.successors(root)))]
        while stack:
            node, successors = stack[-1]
            advanced = False
            for nbr in successors:
                if nbr not in visited:
                    visited.add(nbr)
                    stack.append((nbr, iter(dg.successors(nbr))))
                    advanced = True
                    break
            if not advanced:
                finished.append(node)
                stack.pop()
    finished.reverse()
    return finished


def analyze_network_t(
    g: Union[EcosystemGraph, DirectedMultigraph], s: str
) -> AnalysisResult:
    """Topology-variant analysis.

    Undirected input is oriented by BFS discovery; directed input has an
    approximate feedback arc set removed. Either way the surviving edges form
    a DAG and ``delta`` is a topological order of it.
    """
    if s not in g:
        raise NodeNotFoundError(s)
    if isinstance(g, EcosystemGraph):
        dag = orient_by_bfs(g, s)
    else:
        dag = g.without_edges(eades_feedback_arc_set(g))
    delta = topological_sort(dag)
    prime_edges = {(src, dst, edge_id) for edge_id, (src, dst) in dag.edge_items()}
    return AnalysisResult(delta, prime_edges, None)


def propagate_flow(
    analysis: AnalysisResult,
    s: str,
    gamma: float,
    weights: Optional[Mapping[str, float]] = None,
    variant: str = VARIANT_DISTANCE,
) -> FlowResult:
    """Single-pass flow propagation over the analysis DAG.

    The root is seeded with 1.0 (any positive seed rescales every score by
    the same factor, so rankings are unaffected). Without ``weights`` each
    node splits its discounted value equally over its outgoing edges,
    parallel edges counting individually; with ``weights`` the split is
    proportional to edge weight.
    """
    _check_gamma(gamma)
    position = {v: i for i, v in enumerate(analysis.delta)}
    if s not in position:
        raise NodeNotFoundError(s)
    out_total: dict[str, float] = {}
    parents: dict[str, list[tuple[str, str]]] = {}
    for src, dst, edge_id in sorted(analysis.prime_edges):
        if position[src] >= position[dst]:
            raise ValueError(
                f"ordering is not topological for edge {edge_id!r} ({src!r} -> {dst!r})"
            )
        out_total[src] = out_total.get(src, 0.0) + (
            weights[edge_id] if weights is not None else 1.0
        )
        parents.setdefault(dst, []).append((src, edge_id))
    scores = {v: 0.0 for v in analysis.delta}
    scores[s] = 1.0
    for v in analysis.delta:
        if v == s:
            continue
        acc = 0.0
        for p, edge_id in parents.get(v, ()):
            share = weights[edge_id] if weights is not None else 1.0
            acc += scores[p] * share / out_total[p]
        scores[v] = gamma * acc
    return FlowResult(scores, gamma, variant)


def nora_score(
    g: EcosystemGraph,
    s: str,
    variant: str = VARIANT_DISTANCE,
    gamma: float = 0.95,
    use_weights: bool = False,
) -> FlowResult:
    """End-to-end scoring: analysis plus flow propagation.

    Scores cover every node in the graph; nodes unreachable from ``s`` score
    0. The distance variant on uniform-cost graphs runs entirely on the
    array kernels.
    """
    if variant not in (VARIANT_DISTANCE, VARIANT_TOPOLOGY):
        raise ValueError(f"unknown variant {variant!r}")
    _check_gamma(gamma)
    if s not in g:
        raise NodeNotFoundError(s)
    if variant == VARIANT_DISTANCE:
        csr = g.csr()
        if csr.uniform_cost is not None:
            return FlowResult(_score_bfs_fast(csr, s, gamma, use_weights), gamma, variant)
        analysis = extended_dijkstra(g, s)
    else:
        analysis = analyze_network_t(g, s)
    weights = {e.edge_id: e.weight for e in g.edges()} if use_weights else None
    flow = propagate_flow(analysis, s, gamma, weights=weights, variant=variant)
    scores = {node_id: 0.0 for node_id in g.node_ids()}
    scores.update(flow.scores)
    return FlowResult(scores, gamma, variant)


def _score_bfs_fast(csr: CsrView, s: str, gamma: float, use_weights: bool) -> dict[str, float]:
    dist, mask, out_counts, order = _bfs_analysis(csr, csr.node_index[s])
    source_index = csr.node_index[s]
    if use_weights:
        n = len(csr.node_ids)
        rows = np.repeat(np.arange(n, dtype=np.int64), np.diff(csr.indptr))
        selected = mask.view(bool)
        weight_sums = np.bincount(
            rows[selected], weights=csr.weights[selected], minlength=n
        ).astype(np.float64, copy=False)
        flow = kernels.flow_push_weighted(
            csr.indptr,
            csr.indices,
            mask,
            csr.weights,
            weight_sums,
            order,
            dist,
            source_index,
            gamma,
        )
    else:
        flow = kernels.flow_push(
            csr.indptr, csr.indices, mask, out_counts, order, dist, source_index, gamma
        )
    ids = csr.node_ids
    return {ids[i]: float(flow[i]) for i in range(len(ids))}
