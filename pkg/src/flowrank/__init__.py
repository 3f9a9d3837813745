"""Flow-based ranking of prospective clients over a company ecosystem graph."""

from .analysis import (
    AnalysisResult,
    DirectedMultigraph,
    FlowResult,
    analyze_network_d,
    analyze_network_t,
    eades_feedback_arc_set,
    extended_dijkstra,
    nora_score,
    orient_by_bfs,
    propagate_flow,
    topological_sort,
)
from .graphio import load_graph, read_scores, write_graph, write_scores
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

__version__ = "0.1.0"
