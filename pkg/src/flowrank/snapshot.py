"""Read-only scored snapshot backing the HTTP service.

Scores are computed once (or loaded from a scores file) and frozen together
with the graph; every operation here is a pure read so any number of
requests can share one snapshot. Ranks cover non-root companies in
descending score order with node-id tie-breaks.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Mapping, Optional

from .analysis import nora_score
from .errors import DisconnectedError, NodeNotFoundError
from .model import EcosystemGraph, Edge, Node, NodeKind


@dataclass
class CompanySummary:
    id: str
    name: str
    score: float
    rank: Optional[int]
    status: Optional[str] = None
    location: Optional[str] = None
    year_founded: Optional[str] = None
    description: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "score": self.score,
            "rank": self.rank,
            "status": self.status,
            "location": self.location,
            "yearFounded": self.year_founded,
            "description": self.description,
        }


@dataclass
class SubgraphView:
    nodes: list[tuple[Node, float]]
    edges: list[Edge]
    paths_included: int

    def to_dict(self) -> dict:
        return {
            "nodes": [
                {
                    "id": node.id,
                    "kind": node.kind.value,
                    "name": node.name,
                    "description": node.description,
                    "attrs": node.attrs or {},
                    "score": score,
                }
                for node, score in self.nodes
            ],
            "edges": [_edge_dict(edge) for edge in self.edges],
            "pathsIncluded": self.paths_included,
        }


def _edge_dict(edge: Edge) -> dict:
    label = edge.label
    return {
        "edgeId": edge.edge_id,
        "source": edge.u,
        "target": edge.v,
        "category": label.category.value,
        "role": label.role.value if label.role else None,
        "tense": label.tense.value if label.tense else None,
        "b2bType": label.b2b_type,
        "b2bState": label.b2b_state,
        "cost": edge.cost,
        "weight": edge.weight,
    }


class ScoredSnapshot:
    def __init__(
        self,
        graph: EcosystemGraph,
        scores: Mapping[str, float],
        variant: str,
        gamma: float,
        whitespace_hops: int = 2,
    ):
        graph.freeze()
        self.graph = graph
        self.scores = dict(scores)
        self.variant = variant
        self.gamma = gamma
        self.whitespace_hops = whitespace_hops
        clients, non_clients, root_only = graph.client_partition()
        self.clients = clients
        self.non_clients = non_clients
        self.root_only_clients = root_only
        ranked = sorted(
            (
                node.id
                for node in graph.nodes()
                if node.kind == NodeKind.COMPANY and node.id != graph.root_id
            ),
            key=lambda node_id: (-self.scores.get(node_id, 0.0), node_id),
        )
        self.ranks = {node_id: position for position, node_id in enumerate(ranked, start=1)}

    @classmethod
    def build(
        cls,
        graph: EcosystemGraph,
        variant: str = "d",
        gamma: float = 0.95,
        scores: Optional[Mapping[str, float]] = None,
        whitespace_hops: int = 2,
    ) -> "ScoredSnapshot":
        if scores is None:
            scores = nora_score(graph, graph.root_id, variant, gamma).scores
        return cls(graph, scores, variant, gamma, whitespace_hops)

    # -- lookups -----------------------------------------------------------

    def _company(self, node_id: str) -> Node:
        node = self.graph.node(node_id)  # raises NodeNotFoundError
        if node.kind != NodeKind.COMPANY:
            raise NodeNotFoundError(node_id)
        return node

    def company_summary(self, node_id: str, with_description: bool = False) -> CompanySummary:
        node = self._company(node_id)
        attrs = node.attrs or {}
        return CompanySummary(
            id=node.id,
            name=node.name,
            score=self.scores.get(node.id, 0.0),
            rank=self.ranks.get(node.id),
            status=attrs.get("status"),
            location=attrs.get("location"),
            year_founded=attrs.get("year_founded"),
            description=node.description if with_description else None,
        )


def search_companies(snap: ScoredSnapshot, query: str, limit: int = 20) -> list[CompanySummary]:
    """Case-insensitive name search: exact, then prefix, then substring,
    each tier sorted by score."""
    if not query:
        raise ValueError("query must be non-empty")
    needle = query.casefold()
    matches = []
    for node in snap.graph.nodes():
        if node.kind != NodeKind.COMPANY:
            continue
        name = node.name.casefold()
        if name == needle:
            quality = 0
        elif name.startswith(needle):
            quality = 1
        elif needle in name:
            quality = 2
        else:
            continue
        matches.append((quality, -snap.scores.get(node.id, 0.0), node.id))
    matches.sort()
    return [snap.company_summary(node_id) for _, _, node_id in matches[:limit]]


def rank_list(snap: ScoredSnapshot, ids: list[str]) -> list[CompanySummary]:
    """Deduplicate and order company ids by stored score (best first)."""
    unique = []
    seen = set()
    for node_id in ids:
        snap._company(node_id)  # raises on the offending id
        if node_id not in seen:
            seen.add(node_id)
            unique.append(node_id)
    unique.sort(key=lambda node_id: (-snap.scores.get(node_id, 0.0), node_id))
    return [snap.company_summary(node_id) for node_id in unique]


def whitespace_connections(
    snap: ScoredSnapshot, client_id: str, limit: int = 10, hops: Optional[int] = None
) -> list[CompanySummary]:
    """Non-client companies within the hop horizon of ``client_id``, best first."""
    snap._company(client_id)
    horizon = snap.whitespace_hops if hops is None else hops
    depth = {client_id: 0}
    frontier = [client_id]
    level = 0
    while frontier and level < horizon:
        nxt = []
        for node_id in frontier:
            for nbr in snap.graph.neighbors(node_id):
                if nbr not in depth:
                    depth[nbr] = level + 1
                    nxt.append(nbr)
        frontier = nxt
        level += 1
    candidates = [
        node_id
        for node_id in depth
        if node_id != client_id and node_id in snap.non_clients
    ]
    candidates.sort(key=lambda node_id: (-snap.scores.get(node_id, 0.0), node_id))
    return [snap.company_summary(node_id) for node_id in candidates[:limit]]


def _simple_projection(graph: EcosystemGraph) -> dict[str, list[tuple[str, float]]]:
    best: dict[tuple[str, str], float] = {}
    for edge in graph.edges():
        if edge.u == edge.v:
            continue
        key = (edge.u, edge.v) if edge.u < edge.v else (edge.v, edge.u)
        if key not in best or edge.cost < best[key]:
            best[key] = edge.cost
    adj: dict[str, list[tuple[str, float]]] = {}
    for (u, v), cost in sorted(best.items()):
        adj.setdefault(u, []).append((v, cost))
        adj.setdefault(v, []).append((u, cost))
    for entries in adj.values():
        entries.sort()
    return adj


def _shortest_path(
    adj: Mapping[str, list[tuple[str, float]]],
    source: str,
    target: str,
    banned_nodes: set[str],
    banned_edges: set[tuple[str, str]],
) -> Optional[tuple[float, list[str]]]:
    """Deterministic Dijkstra: equal-cost ties resolve to the lexicographically
    smallest node sequence."""
    heap: list[tuple[float, tuple[str, ...]]] = [(0.0, (source,))]
    done: set[str] = set()
    while heap:
        cost, path = heapq.heappop(heap)
        node = path[-1]
        if node == target:
            return cost, list(path)
        if node in done:
            continue
        done.add(node)
        for nbr, edge_cost in adj.get(node, ()):
            if nbr in done or nbr in banned_nodes:
                continue
            if (node, nbr) in banned_edges:
                continue
            heapq.heappush(heap, (cost + edge_cost, path + (nbr,)))
    return None


def k_shortest_paths(
    graph: EcosystemGraph, source: str, target: str, k: int
) -> list[list[str]]:
    """Up to ``k`` loopless minimum-cost paths on the simple projection."""
    adj = _simple_projection(graph)
    first = _shortest_path(adj, source, target, set(), set())
    if first is None:
        raise DisconnectedError(source, target)
    accepted: list[tuple[float, list[str]]] = [first]
    candidates: list[tuple[float, tuple[str, ...]]] = []
    seen_candidates: set[tuple[str, ...]] = {tuple(first[1])}
    while len(accepted) < k:
        _, previous = accepted[-1]
        for i in range(len(previous) - 1):
            spur = previous[i]
            prefix = previous[: i + 1]
            banned_edges = {
                (path[i], path[i + 1])
                for _, path in accepted
                if len(path) > i + 1 and path[: i + 1] == prefix
            }
            banned_nodes = set(prefix[:-1])
            spur_result = _shortest_path(adj, spur, target, banned_nodes, banned_edges)
            if spur_result is None:
                continue
            candidate = tuple(prefix[:-1]) + tuple(spur_result[1])
            if candidate in seen_candidates:
                continue
            seen_candidates.add(candidate)
            total = _path_cost(adj, candidate)
            heapq.heappush(candidates, (total, candidate))
        if not candidates:
            break
        cost, path = heapq.heappop(candidates)
        accepted.append((cost, list(path)))
    return [path for _, path in accepted]


def _path_cost(adj: Mapping[str, list[tuple[str, float]]], path: tuple[str, ...]) -> float:
    total = 0.0
    for u, v in zip(path, path[1:]):
        total += next(cost for nbr, cost in adj[u] if nbr == v)
    return total


def subgraph_to_root(
    snap: ScoredSnapshot, target_id: str, max_paths: int = 5
) -> SubgraphView:
    """Union of up to ``max_paths`` shortest root-target paths.

    All parallel edges between consecutive path nodes are attached so the
    visual keeps the multigraph texture.
    """
    snap.graph.node(target_id)
    if max_paths < 1:
        raise ValueError(f"max_paths must be >= 1, got {max_paths}")
    root = snap.graph.root_id
    if target_id == root:
        return SubgraphView([(snap.graph.node(root), snap.scores.get(root, 0.0))], [], 0)
    paths = k_shortest_paths(snap.graph, root, target_id, max_paths)
    node_ids: list[str] = []
    edge_ids: list[str] = []
    edges: list[Edge] = []
    seen_nodes: set[str] = set()
    seen_edges: set[str] = set()
    for path in paths:
        for node_id in path:
            if node_id not in seen_nodes:
                seen_nodes.add(node_id)
                node_ids.append(node_id)
        for u, v in zip(path, path[1:]):
            for edge in snap.graph.edges_between(u, v):
                if edge.edge_id not in seen_edges:
                    seen_edges.add(edge.edge_id)
                    edges.append(edge)
                    edge_ids.append(edge.edge_id)
    nodes = [(snap.graph.node(node_id), snap.scores.get(node_id, 0.0)) for node_id in node_ids]
    return SubgraphView(nodes, edges, len(paths))


def expand_node(snap: ScoredSnapshot, node_id: str, limit: int = 10) -> SubgraphView:
    """Fragment with the highest-scored neighbors of ``node_id``.

    The center node is not repeated in the fragment (the caller already has
    it); edges reference it for merging.
    """
    snap.graph.node(node_id)
    neighbors = [nbr for nbr in snap.graph.neighbors(node_id) if nbr != node_id]
    neighbors.sort(key=lambda nbr: (-snap.scores.get(nbr, 0.0), nbr))
    chosen = neighbors[:limit]
    edges: list[Edge] = []
    for nbr in chosen:
        edges.extend(snap.graph.edges_between(node_id, nbr))
    nodes = [(snap.graph.node(nbr), snap.scores.get(nbr, 0.0)) for nbr in chosen]
    return SubgraphView(nodes, edges, 0)
