"""Benchmark of the scoring kernels: compiled extension vs NumPy fallback.

Times the three kernel stages (BFS tiers, shortest-edge marking, flow push)
and the end-to-end scoring call on a synthetic uniform graph.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import kernels
from .analysis import _tier_order, nora_score
from .synth import generate_uniform


@dataclass
class BenchRow:
    backend: str
    stage: str
    seconds: float


def _time(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def run_benchmark(
    node_count: int = 200_000,
    edge_count: int = 1_000_000,
    repeats: int = 3,
    seed: int = 0,
    gamma: float = 0.95,
) -> list[BenchRow]:
    graph = generate_uniform(node_count, edge_count, seed)
    csr = graph.csr()
    source = csr.node_index[graph.root_id]
    rows: list[BenchRow] = []
    for name, impl in sorted(kernels.backends().items()):
        dist = impl.bfs_tiers(csr.indptr, csr.indices, source)
        mask, out_counts = impl.mark_uniform(csr.indptr, csr.indices, dist)
        order = _tier_order(dist)
        rows.append(
            BenchRow(
                name,
                "bfs_tiers",
                _time(lambda: impl.bfs_tiers(csr.indptr, csr.indices, source), repeats),
            )
        )
        rows.append(
            BenchRow(
                name,
                "mark_uniform",
                _time(lambda: impl.mark_uniform(csr.indptr, csr.indices, dist), repeats),
            )
        )
        rows.append(
            BenchRow(
                name,
                "flow_push",
                _time(
                    lambda: impl.flow_push(
                        csr.indptr, csr.indices, mask, out_counts, order, dist, source, gamma
                    ),
                    repeats,
                ),
            )
        )
    rows.append(
        BenchRow(
            kernels.backend_name,
            "nora_score (active backend)",
            _time(lambda: nora_score(graph, graph.root_id, "d", gamma), repeats),
        )
    )
    return rows


def verify_backends_agree(node_count: int = 20_000, edge_count: int = 100_000, seed: int = 1) -> bool:
    """Cross-check that every available backend produces identical arrays."""
    graph = generate_uniform(node_count, edge_count, seed)
    csr = graph.csr()
    source = csr.node_index[graph.root_id]
    results = []
    for _, impl in sorted(kernels.backends().items()):
        dist = impl.bfs_tiers(csr.indptr, csr.indices, source)
        mask, out_counts = impl.mark_uniform(csr.indptr, csr.indices, dist)
        order = _tier_order(dist)
        flow = impl.flow_push(
            csr.indptr, csr.indices, mask, out_counts, order, dist, source, 0.95
        )
        results.append((dist, mask, out_counts, flow))
    first = results[0]
    return all(
        all(np.array_equal(a, b) for a, b in zip(first, other)) for other in results[1:]
    )


def format_table(rows: list[BenchRow], node_count: int, edge_count: int) -> str:
    lines = [
        f"kernel benchmark: {node_count:,} nodes / {edge_count:,} edges "
        f"(best of repeats, seconds)",
        f"{'backend':<12} {'stage':<28} {'time':>10}",
    ]
    for row in rows:
        lines.append(f"{row.backend:<12} {row.stage:<28} {row.seconds:>10.4f}")
    kernel_stages = ("bfs_tiers", "mark_uniform", "flow_push")
    backends = {row.backend for row in rows if row.stage in kernel_stages}
    if {"compiled", "fallback"} <= backends:
        compiled = sum(
            r.seconds for r in rows if r.backend == "compiled" and r.stage in kernel_stages
        )
        fallback = sum(
            r.seconds for r in rows if r.backend == "fallback" and r.stage in kernel_stages
        )
        if compiled > 0:
            lines.append(f"speedup (fallback/compiled, summed kernel stages): {fallback / compiled:.1f}x")
    return "\n".join(lines)
