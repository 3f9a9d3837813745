"""Heterogeneous company/person multigraph with a designated root company.

Nodes are companies or persons. Edges are typed (job roles, business-to-
business relations, client relations), carry a path cost and a flow weight,
and may be parallel: the edge container is a multiset keyed by edge id.
Client edges are stateless and always connect the root to another company.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional

import numpy as np

from .errors import (
    DanglingEdgeError,
    DuplicateEdgeError,
    DuplicateNodeError,
    FrozenGraphError,
    InvalidClientEdgeError,
    InvalidEdgeError,
    InvalidNodeError,
    MissingRootError,
    NoClientEdgeError,
    NodeNotFoundError,
)


class NodeKind(str, Enum):
    COMPANY = "company"
    PERSON = "person"


class EdgeCategory(str, Enum):
    JOB_ROLE = "jobrole"
    B2B = "b2b"
    CLIENT = "client"


class JobRole(str, Enum):
    BOARD_MEMBER = "board_member"
    EXECUTIVE = "executive"


class Tense(str, Enum):
    CURRENT = "current"
    FORMER = "former"


# Well-known values; anything else is carried verbatim ("other" semantics).
KNOWN_B2B_TYPES = ("sponsor", "subsidiary", "investor")
KNOWN_B2B_STATES = ("pending", "cancelled", "prior", "active")


@dataclass(frozen=True)
class EdgeLabel:
    category: EdgeCategory
    role: Optional[JobRole] = None
    tense: Optional[Tense] = None
    b2b_type: Optional[str] = None
    b2b_state: Optional[str] = None

    def validate(self) -> None:
        if self.category == EdgeCategory.JOB_ROLE:
            if self.b2b_type is not None or self.b2b_state is not None:
                raise InvalidEdgeError("job-role labels carry no b2b fields")
        elif self.category == EdgeCategory.B2B:
            if self.role is not None or self.tense is not None:
                raise InvalidEdgeError("b2b labels carry no role/tense fields")
        else:  # CLIENT: stateless by definition
            if any(v is not None for v in (self.role, self.tense, self.b2b_type, self.b2b_state)):
                raise InvalidEdgeError("client labels carry no extra fields")


CLIENT_LABEL = EdgeLabel(EdgeCategory.CLIENT)


@dataclass(slots=True)
class Node:
    id: str
    kind: NodeKind
    name: str
    description: Optional[str] = None
    attrs: Optional[dict[str, str]] = None

    def validate(self) -> None:
        if not self.id:
            raise InvalidNodeError("node id must be non-empty")


@dataclass(slots=True)
class Edge:
    edge_id: str
    u: str
    v: str
    label: EdgeLabel
    cost: float = 1.0
    weight: float = 1.0

    def validate(self) -> None:
        if not self.edge_id:
            raise InvalidEdgeError("edge id must be non-empty")
        if self.cost <= 0:
            raise InvalidEdgeError(f"edge {self.edge_id}: cost must be > 0, got {self.cost}")
        if self.weight <= 0:
            raise InvalidEdgeError(f"edge {self.edge_id}: weight must be > 0, got {self.weight}")
        self.label.validate()

    def touches(self, node_id: str) -> bool:
        return self.u == node_id or self.v == node_id

    def other(self, node_id: str) -> str:
        if node_id == self.u:
            return self.v
        if node_id == self.v:
            return self.u
        raise NodeNotFoundError(node_id)

    def is_self_loop(self) -> bool:
        return self.u == self.v


@dataclass(frozen=True)
class CsrView:
    """Flattened half-edge view of the graph for the scoring kernels.

    Node index i corresponds to ``node_ids[i]``; node ids are sorted so the
    index order is the canonical tie-break order. Every undirected edge
    contributes two half-edges (one per direction); ``edge_index[j]`` maps
    half-edge j back to ``edge_ids``.
    """

    node_ids: list[str]
    node_index: dict[str, int]
    edge_ids: list[str]
    indptr: np.ndarray  # int64, len n+1
    indices: np.ndarray  # int32 neighbor node index per half-edge
    edge_index: np.ndarray  # int32 edge list position per half-edge
    costs: np.ndarray  # float64 per half-edge
    weights: np.ndarray  # float64 per half-edge
    uniform_cost: Optional[float]  # set when all edge costs are equal (or no edges)

    @property
    def node_count(self) -> int:
        return len(self.node_ids)


class EcosystemGraph:
    """Undirected multigraph of companies and persons around a root company.

    Mutable while being ingested and inside the evaluation loop (client-edge
    removal/restoration); ``freeze()`` turns it into a read-only snapshot for
    concurrent readers.
    """

    def __init__(self, root_id: str):
        self.root_id = root_id
        self._nodes: dict[str, Node] = {}
        self._edges: dict[str, Edge] = {}
        self._adj: Optional[dict[str, list[str]]] = None  # flat [nbr, eid, nbr, eid, ...]
        self._frozen = False
        self._version = 0
        self._csr_cache: Optional[tuple[int, CsrView]] = None

    # -- basic accessors -------------------------------------------------

    def __contains__(self, node_id: str) -> bool:
        return node_id in self._nodes

    @property
    def node_count(self) -> int:
        return len(self._nodes)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def node(self, node_id: str) -> Node:
        try:
            return self._nodes[node_id]
        except KeyError:
            raise NodeNotFoundError(node_id) from None

    def edge(self, edge_id: str) -> Edge:
        return self._edges[edge_id]

    def nodes(self) -> Iterator[Node]:
        return iter(self._nodes.values())

    def edges(self) -> Iterator[Edge]:
        return iter(self._edges.values())

    def node_ids(self) -> Iterator[str]:
        return iter(self._nodes)

    # -- mutation ---------------------------------------------------------

    def _check_mutable(self) -> None:
        if self._frozen:
            raise FrozenGraphError("graph snapshot is frozen")

    def add_node(self, node: Node) -> None:
        self._check_mutable()
        node.validate()
        if node.id in self._nodes:
            raise DuplicateNodeError(f"duplicate node id {node.id!r}")
        self._nodes[node.id] = node
        if self._adj is not None:
            self._adj[node.id] = []
        self._bump()

    def add_edge(self, edge: Edge) -> None:
        self._check_mutable()
        edge.validate()
        if edge.edge_id in self._edges:
            raise DuplicateEdgeError(f"duplicate edge id {edge.edge_id!r}")
        for endpoint in (edge.u, edge.v):
            if endpoint not in self._nodes:
                raise DanglingEdgeError(
                    f"edge {edge.edge_id!r} references unknown node {endpoint!r}"
                )
        self._check_label_invariants(edge)
        self._edges[edge.edge_id] = edge
        if self._adj is not None:
            self._adj[edge.u].extend((edge.v, edge.edge_id))
            if edge.v != edge.u:
                self._adj[edge.v].extend((edge.u, edge.edge_id))
        self._bump()

    def _check_label_invariants(self, edge: Edge) -> None:
        ku = self._nodes[edge.u].kind
        kv = self._nodes[edge.v].kind
        cat = edge.label.category
        if cat == EdgeCategory.JOB_ROLE:
            if {ku, kv} != {NodeKind.PERSON, NodeKind.COMPANY}:
                raise InvalidEdgeError(
                    f"job-role edge {edge.edge_id!r} must connect one person and one company"
                )
        elif cat == EdgeCategory.CLIENT:
            touches_root = (edge.u == self.root_id) + (edge.v == self.root_id)
            if touches_root != 1:
                raise InvalidClientEdgeError(
                    f"client edge {edge.edge_id!r} must touch the root on exactly one endpoint"
                )
            other = edge.other(self.root_id)
            if self._nodes[other].kind != NodeKind.COMPANY:
                raise InvalidClientEdgeError(
                    f"client edge {edge.edge_id!r} must connect the root to a company"
                )

    def remove_edge(self, edge_id: str) -> Edge:
        self._check_mutable()
        edge = self._edges.pop(edge_id)
        if self._adj is not None:
            self._remove_adj_entry(edge.u, edge.edge_id)
            if edge.v != edge.u:
                self._remove_adj_entry(edge.v, edge.edge_id)
        self._bump()
        return edge

    def _remove_adj_entry(self, node_id: str, edge_id: str) -> None:
        flat = self._adj[node_id]
        for i in range(1, len(flat), 2):
            if flat[i] == edge_id:
                del flat[i - 1 : i + 1]
                return

    def _bump(self) -> None:
        self._version += 1

    def freeze(self) -> "EcosystemGraph":
        self._frozen = True
        return self

    @property
    def frozen(self) -> bool:
        return self._frozen

    # -- adjacency --------------------------------------------------------

    def _ensure_adj(self) -> dict[str, list[str]]:
        if self._adj is None:
            adj: dict[str, list[str]] = {nid: [] for nid in self._nodes}
            for edge in self._edges.values():
                adj[edge.u].extend((edge.v, edge.edge_id))
                if edge.v != edge.u:
                    adj[edge.v].extend((edge.u, edge.edge_id))
            self._adj = adj
        return self._adj

    def incident_edges(self, node_id: str) -> list[Edge]:
        if node_id not in self._nodes:
            raise NodeNotFoundError(node_id)
        flat = self._ensure_adj()[node_id]
        return [self._edges[flat[i]] for i in range(1, len(flat), 2)]

    def neighbors(self, node_id: str) -> list[str]:
        """Unique neighbor ids in sorted order (self excluded unless looped)."""
        if node_id not in self._nodes:
            raise NodeNotFoundError(node_id)
        flat = self._ensure_adj()[node_id]
        return sorted(set(flat[0::2]))

    def adjacency(self, node_id: str) -> list[tuple[str, str]]:
        """(neighbor, edge_id) pairs sorted by (neighbor, edge_id)."""
        if node_id not in self._nodes:
            raise NodeNotFoundError(node_id)
        flat = self._ensure_adj()[node_id]
        pairs = [(flat[i], flat[i + 1]) for i in range(0, len(flat), 2)]
        pairs.sort()
        return pairs

    def degree(self, node_id: str) -> int:
        if node_id not in self._nodes:
            raise NodeNotFoundError(node_id)
        flat = self._ensure_adj()[node_id]
        return len(flat) // 2

    def edges_between(self, u: str, v: str) -> list[Edge]:
        flat = self._ensure_adj().get(u)
        if flat is None:
            raise NodeNotFoundError(u)
        found = [self._edges[flat[i + 1]] for i in range(0, len(flat), 2) if flat[i] == v]
        found.sort(key=lambda e: e.edge_id)
        return found

    # -- root / client operations ------------------------------------------

    def validate(self) -> None:
        """Check whole-graph invariants; raises on the first violation."""
        root = self._nodes.get(self.root_id)
        if root is None:
            raise MissingRootError(f"root node {self.root_id!r} not present")
        if root.kind != NodeKind.COMPANY:
            raise MissingRootError(f"root node {self.root_id!r} must be a company")
        for edge in self._edges.values():
            edge.validate()
            self._check_label_invariants(edge)

    def client_edges(self, node_id: str) -> list[Edge]:
        """Client edges between the root and ``node_id``, sorted by edge id."""
        return [
            e
            for e in self.edges_between(self.root_id, node_id)
            if e.label.category == EdgeCategory.CLIENT
        ]

    def remove_client_link(self, node_id: str) -> Edge:
        """Remove and return one client edge between root and ``node_id``.

        Parallel client edges are removed lowest edge id first so repeated
        calls drain them deterministically.
        """
        if node_id not in self._nodes:
            raise NodeNotFoundError(node_id)
        candidates = self.client_edges(node_id)
        if not candidates:
            raise NoClientEdgeError(f"no client edge between root and {node_id!r}")
        return self.remove_edge(candidates[0].edge_id)

    def add_client_link(self, node_id: str, edge: Edge) -> None:
        """Re-insert ``edge``, which must be a client edge between root and ``node_id``."""
        if edge.label.category != EdgeCategory.CLIENT:
            raise InvalidClientEdgeError(f"edge {edge.edge_id!r} is not a client edge")
        if not (edge.touches(self.root_id) and edge.touches(node_id)) or node_id == self.root_id:
            raise InvalidClientEdgeError(
                f"edge {edge.edge_id!r} does not connect the root to {node_id!r}"
            )
        self.add_edge(edge)

    def client_partition(self) -> tuple[set[str], set[str], set[str]]:
        """Split non-root companies into (clients, non_clients, root_only_clients).

        A client is any non-root company with at least one client edge; it is
        root-only when client edges are its only incident edges.
        """
        clients: set[str] = set()
        non_clients: set[str] = set()
        root_only: set[str] = set()
        for node in self._nodes.values():
            if node.kind != NodeKind.COMPANY or node.id == self.root_id:
                continue
            incident = self.incident_edges(node.id)
            node_client_edges = [
                e
                for e in incident
                if e.label.category == EdgeCategory.CLIENT and e.touches(self.root_id)
            ]
            if node_client_edges:
                clients.add(node.id)
                if len(node_client_edges) == len(incident):
                    root_only.add(node.id)
            else:
                non_clients.add(node.id)
        return clients, non_clients, root_only

    # -- flattened kernel view ---------------------------------------------

    def csr(self) -> CsrView:
        """Build (or return the cached) half-edge CSR view of the graph."""
        if self._csr_cache is not None and self._csr_cache[0] == self._version:
            return self._csr_cache[1]
        view = self._build_csr()
        self._csr_cache = (self._version, view)
        return view

    def _build_csr(self) -> CsrView:
        node_ids = sorted(self._nodes)
        node_index = {nid: i for i, nid in enumerate(node_ids)}
        n = len(node_ids)
        m = len(self._edges)
        edge_ids = list(self._edges)

        src = np.empty(2 * m, dtype=np.int64)
        dst = np.empty(2 * m, dtype=np.int32)
        eix = np.empty(2 * m, dtype=np.int32)
        costs = np.empty(2 * m, dtype=np.float64)
        weights = np.empty(2 * m, dtype=np.float64)
        lo, hi = np.inf, -np.inf
        k = 0
        for pos, edge in enumerate(self._edges.values()):
            ui = node_index[edge.u]
            vi = node_index[edge.v]
            c = edge.cost
            w = edge.weight
            if c < lo:
                lo = c
            if c > hi:
                hi = c
            src[k] = ui
            dst[k] = vi
            eix[k] = pos
            costs[k] = c
            weights[k] = w
            k += 1
            if vi != ui:  # self-loops contribute a single half-edge
                src[k] = vi
                dst[k] = ui
                eix[k] = pos
                costs[k] = c
                weights[k] = w
                k += 1
        src = src[:k]
        dst = dst[:k]
        eix = eix[:k]
        costs = costs[:k]
        weights = weights[:k]

        order = np.argsort(src, kind="stable")
        src_sorted = src[order]
        indices = dst[order]
        edge_index = eix[order]
        costs = costs[order]
        weights = weights[order]
        counts = np.bincount(src_sorted, minlength=n) if m else np.zeros(n, dtype=np.int64)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        uniform = None
        if m == 0 or lo == hi:
            uniform = 1.0 if m == 0 else float(lo)
        return CsrView(
            node_ids=node_ids,
            node_index=node_index,
            edge_ids=edge_ids,
            indptr=indptr,
            indices=indices,
            edge_index=edge_index,
            costs=costs,
            weights=weights,
            uniform_cost=uniform,
        )

    # -- equality helpers ---------------------------------------------------

    def edge_multiset(self) -> list[tuple]:
        """Canonical sortable signature of the edge multiset (for restoration checks)."""
        rows = []
        for e in self._edges.values():
            lab = e.label
            rows.append(
                (
                    e.edge_id,
                    e.u,
                    e.v,
                    lab.category.value,
                    lab.role.value if lab.role else "",
                    lab.tense.value if lab.tense else "",
                    lab.b2b_type or "",
                    lab.b2b_state or "",
                    e.cost,
                    e.weight,
                )
            )
        rows.sort()
        return rows
