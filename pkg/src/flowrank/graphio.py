"""Flat-file ingestion and serialization.

Both files are UTF-8, tab-separated, one record per line; blank lines and
lines starting with ``#`` are skipped. Free-text fields escape backslash,
tab and newline so any string round-trips.

nodes file fields::

    id  kind(company|person)  name  [description]  [key=value ...]

edges file fields::

    edgeId  src  dst  category(jobrole|b2b|client)  role  tense  b2bType  b2bState  [cost]  [weight]

Empty role/tense/b2bType/b2bState mean "not set"; absent or empty
cost/weight default to 1.0.

Scores files are ``nodeId  algorithm  parameter  score`` with full float
precision.
"""

from __future__ import annotations

from typing import Optional

from .errors import ParseError
from .model import (
    EcosystemGraph,
    Edge,
    EdgeCategory,
    EdgeLabel,
    JobRole,
    Node,
    NodeKind,
    Tense,
)

_ESCAPES = {"\\": "\\\\", "\t": "\\t", "\n": "\\n", "\r": "\\r"}


def _escape(text: str) -> str:
    for raw, esc in _ESCAPES.items():
        text = text.replace(raw, esc)
    return text


def _unescape(text: str) -> str:
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\\" and i + 1 < len(text):
            nxt = text[i + 1]
            out.append({"\\": "\\", "t": "\t", "n": "\n", "r": "\r"}.get(nxt, "\\" + nxt))
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def _split_line(line: str) -> list[str]:
    return [_unescape(f) for f in line.rstrip("\n").split("\t")]


def parse_nodes(path: str) -> list[Node]:
    nodes = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip() or line.startswith("#"):
                continue
            fields = _split_line(line)
            if len(fields) < 3:
                raise ParseError(path, line_no, "node record needs at least id, kind, name")
            node_id, kind_raw, name = fields[0], fields[1], fields[2]
            if not node_id:
                raise ParseError(path, line_no, "empty node id")
            try:
                kind = NodeKind(kind_raw)
            except ValueError:
                raise ParseError(path, line_no, f"unknown node kind {kind_raw!r}") from None
            description = fields[3] if len(fields) > 3 and fields[3] else None
            attrs: Optional[dict[str, str]] = None
            if len(fields) > 4:
                attrs = {}
                for f in fields[4:]:
                    if not f:
                        continue
                    if "=" not in f:
                        raise ParseError(path, line_no, f"attr {f!r} is not key=value")
                    key, _, value = f.partition("=")
                    attrs[key] = value
                if not attrs:
                    attrs = None
            nodes.append(Node(node_id, kind, name, description, attrs))
    return nodes


def _parse_optional(raw: str, enum_cls, what: str, path: str, line_no: int):
    if not raw:
        return None
    try:
        return enum_cls(raw)
    except ValueError:
        raise ParseError(path, line_no, f"unknown {what} {raw!r}") from None


def _parse_float(raw: str, default: float, what: str, path: str, line_no: int) -> float:
    if not raw:
        return default
    try:
        return float(raw)
    except ValueError:
        raise ParseError(path, line_no, f"bad {what} {raw!r}") from None


def parse_edges(path: str) -> list[Edge]:
    edges = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip() or line.startswith("#"):
                continue
            fields = _split_line(line)
            if len(fields) < 4:
                raise ParseError(
                    path, line_no, "edge record needs at least edgeId, src, dst, category"
                )
            fields += [""] * (10 - len(fields))
            edge_id, src, dst, cat_raw = fields[0], fields[1], fields[2], fields[3]
            if not edge_id:
                raise ParseError(path, line_no, "empty edge id")
            try:
                category = EdgeCategory(cat_raw)
            except ValueError:
                raise ParseError(path, line_no, f"unknown edge category {cat_raw!r}") from None
            label = EdgeLabel(
                category=category,
                role=_parse_optional(fields[4], JobRole, "job role", path, line_no),
                tense=_parse_optional(fields[5], Tense, "tense", path, line_no),
                b2b_type=fields[6] or None,
                b2b_state=fields[7] or None,
            )
            cost = _parse_float(fields[8], 1.0, "cost", path, line_no)
            weight = _parse_float(fields[9], 1.0, "weight", path, line_no)
            edges.append(Edge(edge_id, src, dst, label, cost, weight))
    return edges


def load_graph(nodes_path: str, edges_path: str, root_id: str) -> EcosystemGraph:
    """Parse both files into a validated graph rooted at ``root_id``."""
    graph = EcosystemGraph(root_id)
    for node in parse_nodes(nodes_path):
        graph.add_node(node)
    graph.validate()  # root present and a company, before edge rules apply
    for edge in parse_edges(edges_path):
        graph.add_edge(edge)
    return graph


def serialize_nodes(graph: EcosystemGraph) -> str:
    """Canonical form: records sorted by id, so equal graphs give equal bytes."""
    lines = []
    for node in sorted(graph.nodes(), key=lambda n: n.id):
        fields = [_escape(node.id), node.kind.value, _escape(node.name)]
        if node.description is not None or node.attrs:
            fields.append(_escape(node.description or ""))
        if node.attrs:
            for key in sorted(node.attrs):
                fields.append(f"{_escape(key)}={_escape(node.attrs[key])}")
        lines.append("\t".join(fields))
    return "\n".join(lines) + ("\n" if lines else "")


def serialize_edges(graph: EcosystemGraph) -> str:
    lines = []
    for edge in sorted(graph.edges(), key=lambda e: e.edge_id):
        lab = edge.label
        fields = [
            _escape(edge.edge_id),
            _escape(edge.u),
            _escape(edge.v),
            lab.category.value,
            lab.role.value if lab.role else "",
            lab.tense.value if lab.tense else "",
            _escape(lab.b2b_type) if lab.b2b_type else "",
            _escape(lab.b2b_state) if lab.b2b_state else "",
            repr(edge.cost),
            repr(edge.weight),
        ]
        lines.append("\t".join(fields))
    return "\n".join(lines) + ("\n" if lines else "")


def write_graph(graph: EcosystemGraph, nodes_path: str, edges_path: str) -> None:
    with open(nodes_path, "w", encoding="utf-8") as fh:
        fh.write(serialize_nodes(graph))
    with open(edges_path, "w", encoding="utf-8") as fh:
        fh.write(serialize_edges(graph))


def serialize_scores(scores: dict[str, float], algorithm: str, parameter: float) -> str:
    lines = [
        f"{_escape(node_id)}\t{algorithm}\t{parameter!r}\t{score!r}"
        for node_id, score in sorted(scores.items())
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def write_scores(path: str, scores: dict[str, float], algorithm: str, parameter: float) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_scores(scores, algorithm, parameter))


def read_scores(path: str) -> tuple[dict[str, float], str, float]:
    """Read a scores file; returns (scores, algorithm tag, parameter)."""
    scores: dict[str, float] = {}
    algorithm = ""
    parameter = 0.0
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip() or line.startswith("#"):
                continue
            fields = _split_line(line)
            if len(fields) != 4:
                raise ParseError(path, line_no, "score record needs nodeId, algorithm, parameter, score")
            try:
                scores[fields[0]] = float(fields[3])
                parameter = float(fields[2])
            except ValueError:
                raise ParseError(path, line_no, "bad numeric field") from None
            algorithm = fields[1]
    return scores, algorithm, parameter
