"""Stratified edge-holdout evaluation of the ranking algorithms.

The population is every non-client company plus every client that has signal
beyond its client edge (clients connected only to the root are excluded:
removing their single edge leaves nothing for any algorithm to rank on).
Folds preserve the class ratio. Each round removes the fold's client edges,
scores the modified graph with every algorithm, computes ranking metrics
with the held-out clients as positives, and restores the exact edges.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence

from .analysis import nora_score
from .baselines import PropFlowConfig, RPRConfig, propflow, rooted_pagerank
from .errors import (
    GraphRestorationError,
    InsufficientPopulationError,
    InvalidConfigError,
    NoClientEdgeError,
)
from .metrics import LabeledRanking, aupr, auroc, precision_at_k, tpr_p
from .model import EcosystemGraph

METRIC_NAMES = ("p@10", "p@50", "p@100", "p@1000", "tpr_p", "auroc", "aupr")
PRECISION_CUTS = {"p@10": 10, "p@50": 50, "p@100": 100, "p@1000": 1000}


@dataclass
class AlgorithmSpec:
    name: str
    scorer: Callable[[EcosystemGraph, str], Mapping[str, float]]


def default_algorithm_suite(
    gamma: float = 0.95,
    rpr_config: Optional[RPRConfig] = None,
    propflow_config: Optional[PropFlowConfig] = None,
) -> list[AlgorithmSpec]:
    """The four compared algorithms with their published defaults."""
    rpr_config = rpr_config or RPRConfig()
    propflow_config = propflow_config or PropFlowConfig()
    return [
        AlgorithmSpec("nora-d", lambda g, s: nora_score(g, s, "d", gamma).scores),
        AlgorithmSpec("nora-t", lambda g, s: nora_score(g, s, "t", gamma).scores),
        AlgorithmSpec(
            "rooted-pagerank", lambda g, s: rooted_pagerank(g, s, rpr_config).scores
        ),
        AlgorithmSpec("propflow", lambda g, s: propflow(g, s, propflow_config)),
    ]


@dataclass
class FoldSpec:
    folds: list[list[str]]
    fold_count: int


def sample_folds(g: EcosystemGraph, fold_count: int = 10, seed: int = 0) -> FoldSpec:
    """Stratified partition of the eligible population, reproducible by seed.

    Round-robin assignment after a seeded shuffle keeps each fold's class
    counts within one node of every other fold's.
    """
    if fold_count < 2:
        raise InvalidConfigError(f"fold_count must be >= 2, got {fold_count}")
    clients, non_clients, root_only = g.client_partition()
    positives = sorted(clients - root_only)
    negatives = sorted(non_clients)
    if len(positives) < fold_count or len(negatives) < fold_count:
        raise InsufficientPopulationError(
            f"need at least {fold_count} connected clients and non-clients, "
            f"got {len(positives)} and {len(negatives)}"
        )
    rng = random.Random(seed)
    rng.shuffle(positives)
    rng.shuffle(negatives)
    folds: list[list[str]] = [[] for _ in range(fold_count)]
    for i, node_id in enumerate(positives):
        folds[i % fold_count].append(node_id)
    for i, node_id in enumerate(negatives):
        folds[i % fold_count].append(node_id)
    return FoldSpec([sorted(fold) for fold in folds], fold_count)


@dataclass
class EvaluationReport:
    algorithms: list[str]
    fold_count: int
    seed: int
    per_fold: dict[str, dict[str, list[float]]]
    averages: dict[str, dict[str, float]] = field(init=False)

    def __post_init__(self):
        self.averages = {
            name: {
                metric: sum(values) / len(values)
                for metric, values in metric_map.items()
            }
            for name, metric_map in self.per_fold.items()
        }

    def to_csv(self) -> str:
        lines = ["algorithm," + ",".join(METRIC_NAMES)]
        for name in self.algorithms:
            row = self.averages[name]
            lines.append(name + "," + ",".join(repr(row[m]) for m in METRIC_NAMES))
        return "\n".join(lines) + "\n"

    def fold_details_csv(self) -> str:
        lines = ["algorithm,fold," + ",".join(METRIC_NAMES)]
        for name in self.algorithms:
            for i in range(self.fold_count):
                values = (repr(self.per_fold[name][m][i]) for m in METRIC_NAMES)
                lines.append(f"{name},{i}," + ",".join(values))
        return "\n".join(lines) + "\n"


def run_evaluation(
    g: EcosystemGraph,
    algorithms: Optional[Sequence[AlgorithmSpec]] = None,
    fold_count: int = 10,
    seed: int = 0,
    metrics_population: str = "fold",
) -> EvaluationReport:
    """Full holdout loop; the graph is returned bit-identical to its input.

    ``metrics_population`` selects the ranked test instances per fold:
    ``"fold"`` (default) ranks the fold's own nodes, ``"global"`` ranks the
    fold's held-out clients against every eligible non-client.
    """
    if algorithms is None:
        algorithms = default_algorithm_suite()
    if not algorithms:
        raise InvalidConfigError("need at least one algorithm")
    if metrics_population not in ("fold", "global"):
        raise InvalidConfigError(f"unknown metrics population {metrics_population!r}")
    fold_spec = sample_folds(g, fold_count, seed)
    clients, non_clients, _ = g.client_partition()
    all_negatives = sorted(non_clients)
    before = g.edge_multiset()

    per_fold: dict[str, dict[str, list[float]]] = {
        spec.name: {metric: [] for metric in METRIC_NAMES} for spec in algorithms
    }
    for fold in fold_spec.folds:
        held_out = [node_id for node_id in fold if node_id in clients]
        removed = []
        for node_id in held_out:
            while True:
                try:
                    removed.append((node_id, g.remove_client_link(node_id)))
                except NoClientEdgeError:
                    break
        for node_id in held_out:  # holdout soundness
            if g.client_edges(node_id):
                raise GraphRestorationError(
                    f"client edge to held-out node {node_id!r} survived removal"
                )
        if metrics_population == "fold":
            population = fold
        else:
            population = sorted(set(held_out) | set(all_negatives))
        positives = set(held_out)
        for spec in algorithms:
            scores = spec.scorer(g, g.root_id)
            ranking = LabeledRanking.from_scores(scores, positives, population)
            rows = per_fold[spec.name]
            for metric, k in PRECISION_CUTS.items():
                rows[metric].append(precision_at_k(ranking, k))
            rows["tpr_p"].append(tpr_p(ranking))
            rows["auroc"].append(auroc(ranking))
            rows["aupr"].append(aupr(ranking))
        for node_id, edge in removed:
            g.add_client_link(node_id, edge)

    after = g.edge_multiset()
    if after != before:
        raise GraphRestorationError("edge multiset changed across the evaluation run")
    return EvaluationReport(
        [spec.name for spec in algorithms], fold_count, seed, per_fold
    )
