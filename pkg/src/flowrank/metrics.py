"""Ranking quality metrics over labeled score lists."""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import DegenerateLabelsError, EmptyRankingError


class LabeledRanking:
    """Entries (node_id, score, positive) kept sorted by descending score.

    Score ties break on ascending node id so every metric is deterministic.
    """

    def __init__(self, entries: Iterable[tuple[str, float, bool]]):
        self.entries = sorted(entries, key=lambda item: (-item[1], item[0]))

    @classmethod
    def from_scores(
        cls,
        scores: Mapping[str, float],
        positives: set[str],
        population: Iterable[str],
    ) -> "LabeledRanking":
        return cls(
            (node_id, scores.get(node_id, 0.0), node_id in positives)
            for node_id in population
        )

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def positive_count(self) -> int:
        return sum(1 for _, _, positive in self.entries if positive)


def precision_at_k(ranking: LabeledRanking, k: int) -> float:
    """Fraction of positives among the top min(k, len) entries."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not ranking.entries:
        raise EmptyRankingError("cannot compute precision of an empty ranking")
    cut = min(k, len(ranking.entries))
    hits = sum(1 for _, _, positive in ranking.entries[:cut] if positive)
    return hits / cut


def auroc(ranking: LabeledRanking) -> float:
    """Probability a random positive outranks a random negative (ties count half).

    Rank-sum formulation: average ranks over score ties, then the
    Mann-Whitney statistic normalized by the number of positive/negative
    pairs.
    """
    n_pos = ranking.positive_count
    n_neg = len(ranking.entries) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise DegenerateLabelsError("need at least one positive and one negative")
    ascending = sorted(ranking.entries, key=lambda item: item[1])
    rank_sum_pos = 0.0
    i = 0
    while i < len(ascending):
        j = i
        while j < len(ascending) and ascending[j][1] == ascending[i][1]:
            j += 1
        average_rank = (i + 1 + j) / 2.0  # ranks are 1-based over [i, j)
        rank_sum_pos += average_rank * sum(1 for e in ascending[i:j] if e[2])
        i = j
    u_statistic = rank_sum_pos - n_pos * (n_pos + 1) / 2.0
    return u_statistic / (n_pos * n_neg)


def aupr(ranking: LabeledRanking) -> float:
    """Average precision: mean of precision at each positive hit."""
    n_pos = ranking.positive_count
    if n_pos == 0:
        raise DegenerateLabelsError("need at least one positive")
    hits = 0
    total = 0.0
    for position, (_, _, positive) in enumerate(ranking.entries, start=1):
        if positive:
            hits += 1
            total += hits / position
    return total / n_pos


def tpr_p(ranking: LabeledRanking) -> float:
    """Precision at the cut equal to the number of positives."""
    n_pos = ranking.positive_count
    if n_pos == 0:
        raise DegenerateLabelsError("need at least one positive")
    return precision_at_k(ranking, n_pos)
