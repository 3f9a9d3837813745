"""Command-line entry point: generate, ingest, score, evaluate, serve, bench.

Exit codes: 0 success, 1 usage error, 2 data error, 3 runtime error.
"""

from __future__ import annotations

import json
import os
import sys
from typing import Optional

import click

from . import graphio
from .analysis import nora_score
from .baselines import PropFlowConfig, RPRConfig, propflow, rooted_pagerank
from .bench import format_table, run_benchmark
from .errors import DataError, FlowrankError
from .evaluation import AlgorithmSpec, default_algorithm_suite, run_evaluation
from .synth import GenConfig, generate


def _resolve_root(root: Optional[str], manifest: Optional[str]) -> str:
    if root:
        return root
    if manifest:
        with open(manifest, encoding="utf-8") as fh:
            data = json.load(fh)
        if "root" not in data:
            raise click.UsageError(f"manifest {manifest!r} has no 'root' field")
        return data["root"]
    raise click.UsageError("provide --root or --manifest")


def _load(nodes: str, edges: str, root: Optional[str], manifest: Optional[str]):
    return graphio.load_graph(nodes, edges, _resolve_root(root, manifest))


graph_options = [
    click.option("--nodes", "nodes_path", required=True, type=click.Path(), help="nodes file"),
    click.option("--edges", "edges_path", required=True, type=click.Path(), help="edges file"),
    click.option("--root", help="root company node id"),
    click.option("--manifest", type=click.Path(), help="manifest json naming the root"),
]


def with_graph_options(fn):
    for option in reversed(graph_options):
        fn = option(fn)
    return fn


@click.group()
def cli():
    """Client-ecosystem graph engine: scoring, evaluation, and exploration."""


@cli.command("generate")
@click.option("--out-dir", required=True, type=click.Path(), help="output directory")
@click.option("--companies", default=150, show_default=True, help="companies besides the root")
@click.option("--persons", type=int, default=None, help="persons (default: half the companies)")
@click.option("--client-ratio", default=1.0 / 15.0, show_default="1/15")
@click.option("--root-only-fraction", default=0.5, show_default=True)
@click.option("--signal/--no-signal", default=True, show_default=True,
              help="plant learnable client structure")
@click.option("--attachment-exponent", default=1.0, show_default=True)
@click.option("--seed", default=0, show_default=True)
def generate_cmd(out_dir, companies, persons, client_ratio, root_only_fraction, signal,
                 attachment_exponent, seed):
    """Generate a synthetic ecosystem as nodes/edges/manifest files."""
    cfg = GenConfig(
        company_count=companies,
        person_count=persons,
        client_ratio=client_ratio,
        root_only_client_fraction=root_only_fraction,
        signal=signal,
        attachment_exponent=attachment_exponent,
        seed=seed,
    )
    graph = generate(cfg)
    os.makedirs(out_dir, exist_ok=True)
    nodes_path = os.path.join(out_dir, "nodes.tsv")
    edges_path = os.path.join(out_dir, "edges.tsv")
    graphio.write_graph(graph, nodes_path, edges_path)
    manifest_path = os.path.join(out_dir, "manifest.json")
    with open(manifest_path, "w", encoding="utf-8") as fh:
        json.dump(
            {"root": graph.root_id, "nodes": graph.node_count, "edges": graph.edge_count},
            fh,
            indent=2,
            sort_keys=True,
        )
        fh.write("\n")
    click.echo(f"wrote {nodes_path}, {edges_path}, {manifest_path}")


@cli.command("ingest")
@with_graph_options
@click.option("--out-dir", required=True, type=click.Path(), help="validated snapshot directory")
def ingest_cmd(nodes_path, edges_path, root, manifest, out_dir):
    """Validate input files and write a canonical snapshot of them."""
    graph = _load(nodes_path, edges_path, root, manifest)
    os.makedirs(out_dir, exist_ok=True)
    graphio.write_graph(
        graph, os.path.join(out_dir, "nodes.tsv"), os.path.join(out_dir, "edges.tsv")
    )
    with open(os.path.join(out_dir, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(
            {"root": graph.root_id, "nodes": graph.node_count, "edges": graph.edge_count},
            fh,
            indent=2,
            sort_keys=True,
        )
        fh.write("\n")
    clients, non_clients, root_only = graph.client_partition()
    click.echo(
        f"validated {graph.node_count} nodes / {graph.edge_count} edges; "
        f"{len(clients)} clients ({len(root_only)} root-only), {len(non_clients)} prospects"
    )


@cli.command("score")
@with_graph_options
@click.option("--algorithm", type=click.Choice(["nora", "rpr", "propflow"]), default="nora",
              show_default=True)
@click.option("--variant", type=click.Choice(["d", "t"]), default="d", show_default=True)
@click.option("--gamma", default=0.95, show_default=True)
@click.option("--use-weights", is_flag=True, help="split flow by edge weight")
@click.option("--alpha", default=0.15, show_default=True)
@click.option("--tolerance", default=1.0e-6, show_default=True)
@click.option("--max-iterations", default=100, show_default=True)
@click.option("--depth", default=10, show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path(), help="scores file")
def score_cmd(nodes_path, edges_path, root, manifest, algorithm, variant, gamma,
              use_weights, alpha, tolerance, max_iterations, depth, out_path):
    """Score every node and export the ranking input."""
    graph = _load(nodes_path, edges_path, root, manifest)
    if algorithm == "nora":
        result = nora_score(graph, graph.root_id, variant, gamma, use_weights=use_weights)
        scores, tag, parameter = result.scores, f"nora-{variant}", gamma
    elif algorithm == "rpr":
        cfg = RPRConfig(alpha=alpha, tolerance=tolerance, max_iterations=max_iterations)
        rpr = rooted_pagerank(graph, graph.root_id, cfg)
        if not rpr.converged:
            click.echo(f"warning: no convergence within {cfg.max_iterations} iterations", err=True)
        scores, tag, parameter = rpr.scores, "rooted-pagerank", alpha
    else:
        scores = propflow(graph, graph.root_id, PropFlowConfig(depth=depth))
        tag, parameter = "propflow", float(depth)
    graphio.write_scores(out_path, scores, tag, parameter)
    click.echo(f"wrote {len(scores)} scores to {out_path}")


@cli.command("evaluate")
@with_graph_options
@click.option("--folds", default=10, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--gamma", default=0.95, show_default=True)
@click.option("--alpha", default=0.15, show_default=True)
@click.option("--tolerance", default=1.0e-6, show_default=True)
@click.option("--max-iterations", default=100, show_default=True)
@click.option("--depth", default=10, show_default=True)
@click.option("--algorithms", default="nora-d,nora-t,rooted-pagerank,propflow",
              show_default=True, help="comma-separated subset")
@click.option("--population", type=click.Choice(["fold", "global"]), default="fold",
              show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path(), help="report CSV")
@click.option("--fold-details", "details_path", type=click.Path(), default=None,
              help="optional per-fold CSV")
def evaluate_cmd(nodes_path, edges_path, root, manifest, folds, seed, gamma, alpha,
                 tolerance, max_iterations, depth, algorithms, population, out_path,
                 details_path):
    """Run the stratified edge-holdout comparison and write the report."""
    graph = _load(nodes_path, edges_path, root, manifest)
    suite = {
        spec.name: spec
        for spec in default_algorithm_suite(
            gamma,
            RPRConfig(alpha=alpha, tolerance=tolerance, max_iterations=max_iterations),
            PropFlowConfig(depth=depth),
        )
    }
    chosen: list[AlgorithmSpec] = []
    for name in algorithms.split(","):
        name = name.strip()
        if name not in suite:
            raise click.UsageError(f"unknown algorithm {name!r} (have: {', '.join(suite)})")
        chosen.append(suite[name])
    report = run_evaluation(graph, chosen, folds, seed, metrics_population=population)
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(report.to_csv())
    click.echo(f"wrote {out_path}")
    if details_path:
        with open(details_path, "w", encoding="utf-8") as fh:
            fh.write(report.fold_details_csv())
        click.echo(f"wrote {details_path}")
    for name in report.algorithms:
        avg = report.averages[name]
        click.echo(
            f"{name:>16}: "
            + "  ".join(f"{metric}={avg[metric]:.4f}" for metric in avg)
        )


@cli.command("serve")
@with_graph_options
@click.option("--variant", type=click.Choice(["d", "t"]), default="d", show_default=True)
@click.option("--gamma", default=0.95, show_default=True)
@click.option("--scores", "scores_path", type=click.Path(), default=None,
              help="precomputed scores file (skips scoring at boot)")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8080, show_default=True)
@click.option("--ui-dir", type=click.Path(), default=None, help="static frontend directory")
def serve_cmd(nodes_path, edges_path, root, manifest, variant, gamma, scores_path,
              host, port, ui_dir):
    """Score once, freeze the snapshot, and serve the exploration API."""
    import uvicorn

    from .service import create_app
    from .snapshot import ScoredSnapshot

    graph = _load(nodes_path, edges_path, root, manifest)
    scores = None
    if scores_path:
        scores, tag, _ = graphio.read_scores(scores_path)
        click.echo(f"loaded {len(scores)} precomputed scores ({tag})")
    snapshot = ScoredSnapshot.build(graph, variant, gamma, scores=scores)
    app = create_app(snapshot, ui_dir=ui_dir)
    click.echo(f"serving on http://{host}:{port} (root={graph.root_id})")
    uvicorn.run(app, host=host, port=port, log_level="warning")


@cli.command("bench")
@click.option("--nodes", "node_count", default=200_000, show_default=True)
@click.option("--edges", "edge_count", default=1_000_000, show_default=True)
@click.option("--repeats", default=3, show_default=True)
@click.option("--seed", default=0, show_default=True)
def bench_cmd(node_count, edge_count, repeats, seed):
    """Compare the compiled kernels against the NumPy fallback."""
    rows = run_benchmark(node_count, edge_count, repeats, seed)
    click.echo(format_table(rows, node_count, edge_count))


def main(argv: Optional[list[str]] = None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.exceptions.Exit as exc:  # --help and friends
        return exc.exit_code
    except click.UsageError as exc:
        exc.show()
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except DataError as exc:
        click.echo(f"data error: {exc}", err=True)
        return 2
    except OSError as exc:
        click.echo(f"data error: {exc}", err=True)
        return 2
    except FlowrankError as exc:
        click.echo(f"error: {exc}", err=True)
        return 3
    except Exception as exc:  # pragma: no cover - last resort
        click.echo(f"internal error: {exc}", err=True)
        return 3


if __name__ == "__main__":
    sys.exit(main())
