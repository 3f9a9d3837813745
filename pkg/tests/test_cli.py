import json
import subprocess
import sys

import pytest

from flowrank import graphio
from flowrank.analysis import nora_score
from flowrank.cli import main
from flowrank.evaluation import run_evaluation
from flowrank.synth import GenConfig, generate


def run_cli(*argv):
    return main(list(argv))


@pytest.fixture(scope="module")
def dataset(tmp_path_factory):
    out = tmp_path_factory.mktemp("data")
    code = run_cli(
        "generate", "--out-dir", str(out), "--companies", "60", "--seed", "3"
    )
    assert code == 0
    return out


class TestGenerate:
    def test_writes_files_and_manifest(self, dataset):
        manifest = json.loads((dataset / "manifest.json").read_text())
        assert manifest["root"] == "root"
        assert (dataset / "nodes.tsv").exists()
        assert (dataset / "edges.tsv").exists()

    def test_matches_library_output_bytes(self, dataset, tmp_path):
        graph = generate(GenConfig(company_count=60, seed=3))
        assert (dataset / "nodes.tsv").read_text() == graphio.serialize_nodes(graph)
        assert (dataset / "edges.tsv").read_text() == graphio.serialize_edges(graph)


class TestIngest:
    def test_valid_roundtrip(self, dataset, tmp_path):
        out = tmp_path / "snap"
        code = run_cli(
            "ingest",
            "--nodes", str(dataset / "nodes.tsv"),
            "--edges", str(dataset / "edges.tsv"),
            "--manifest", str(dataset / "manifest.json"),
            "--out-dir", str(out),
        )
        assert code == 0
        assert (out / "nodes.tsv").read_text() == (dataset / "nodes.tsv").read_text()

    def test_data_error_exit_code(self, dataset, tmp_path):
        bad = tmp_path / "bad.tsv"
        bad.write_text("e1\troot\tghost\tb2b\n")
        code = run_cli(
            "ingest",
            "--nodes", str(dataset / "nodes.tsv"),
            "--edges", str(bad),
            "--root", "root",
            "--out-dir", str(tmp_path / "x"),
        )
        assert code == 2

    def test_missing_file_is_data_error(self, tmp_path):
        code = run_cli(
            "ingest",
            "--nodes", str(tmp_path / "none.tsv"),
            "--edges", str(tmp_path / "none2.tsv"),
            "--root", "root",
            "--out-dir", str(tmp_path / "x"),
        )
        assert code == 2


class TestScore:
    def test_scores_match_library(self, dataset, tmp_path):
        out = tmp_path / "scores.tsv"
        code = run_cli(
            "score",
            "--nodes", str(dataset / "nodes.tsv"),
            "--edges", str(dataset / "edges.tsv"),
            "--manifest", str(dataset / "manifest.json"),
            "--variant", "d",
            "--gamma", "0.95",
            "--out", str(out),
        )
        assert code == 0
        scores, tag, parameter = graphio.read_scores(str(out))
        assert tag == "nora-d"
        assert parameter == 0.95
        graph = generate(GenConfig(company_count=60, seed=3))
        expected = nora_score(graph, "root", "d", 0.95).scores
        assert scores == expected

    @pytest.mark.parametrize("algorithm,tag", [("rpr", "rooted-pagerank"), ("propflow", "propflow")])
    def test_baseline_scoring(self, dataset, tmp_path, algorithm, tag):
        out = tmp_path / f"{algorithm}.tsv"
        code = run_cli(
            "score",
            "--nodes", str(dataset / "nodes.tsv"),
            "--edges", str(dataset / "edges.tsv"),
            "--manifest", str(dataset / "manifest.json"),
            "--algorithm", algorithm,
            "--out", str(out),
        )
        assert code == 0
        _, got_tag, _ = graphio.read_scores(str(out))
        assert got_tag == tag


class TestEvaluate:
    def test_deterministic_reports(self, dataset, tmp_path):
        args = [
            "evaluate",
            "--nodes", str(dataset / "nodes.tsv"),
            "--edges", str(dataset / "edges.tsv"),
            "--manifest", str(dataset / "manifest.json"),
            "--folds", "2",
            "--seed", "1",
            "--algorithms", "nora-d,propflow",
        ]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run_cli(*args, "--out", str(a)) == 0
        assert run_cli(*args, "--out", str(b)) == 0
        assert a.read_text() == b.read_text()

    def test_matches_library_run(self, dataset, tmp_path):
        out = tmp_path / "report.csv"
        details = tmp_path / "folds.csv"
        code = run_cli(
            "evaluate",
            "--nodes", str(dataset / "nodes.tsv"),
            "--edges", str(dataset / "edges.tsv"),
            "--manifest", str(dataset / "manifest.json"),
            "--folds", "2",
            "--seed", "7",
            "--out", str(out),
            "--fold-details", str(details),
        )
        assert code == 0
        graph = generate(GenConfig(company_count=60, seed=3))
        report = run_evaluation(graph, fold_count=2, seed=7)
        assert out.read_text() == report.to_csv()
        assert details.read_text() == report.fold_details_csv()

    def test_unknown_algorithm_usage_error(self, dataset, tmp_path):
        code = run_cli(
            "evaluate",
            "--nodes", str(dataset / "nodes.tsv"),
            "--edges", str(dataset / "edges.tsv"),
            "--root", "root",
            "--algorithms", "martian",
            "--out", str(tmp_path / "r.csv"),
        )
        assert code == 1


class TestExitCodes:
    def test_unknown_flag_is_usage_error(self):
        assert run_cli("score", "--martian") == 1

    def test_no_root_designation(self, dataset, tmp_path):
        code = run_cli(
            "score",
            "--nodes", str(dataset / "nodes.tsv"),
            "--edges", str(dataset / "edges.tsv"),
            "--out", str(tmp_path / "s.tsv"),
        )
        assert code == 1

    def test_help_exits_zero(self):
        assert run_cli("--help") == 0

    def test_subprocess_exit_codes(self, tmp_path):
        # the installed console script must carry the same contract
        result = subprocess.run(
            [sys.executable, "-m", "flowrank.cli", "--martian"],
            capture_output=True,
            text=True,
        )
        assert result.returncode == 1

    def test_bench_runs_small(self):
        assert run_cli("bench", "--nodes", "2000", "--edges", "8000", "--repeats", "1") == 0
