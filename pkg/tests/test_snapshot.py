import pytest

from flowrank.errors import DisconnectedError, NodeNotFoundError
from flowrank.model import JobRole, Tense
from flowrank.snapshot import (
    ScoredSnapshot,
    expand_node,
    k_shortest_paths,
    rank_list,
    search_companies,
    subgraph_to_root,
    whitespace_connections,
)

from conftest import b2b_edge, build_graph, client_edge, company, jobrole_edge, person

import oracles


def ecosystem_snapshot():
    """Root with one wired client (A), one root-only client (Q), two
    prospects (B "BlackOrange", T) reachable through shared persons."""
    g = build_graph(
        "R",
        [
            company("R", "Root Corp", status="active", location="Dublin"),
            company("A", "Alpha Analytics", status="active", year_founded="2001"),
            company("B", "BlackOrange", location="Zurich"),
            company("T", "Tango Ltd"),
            company("Q", "Quiet Co"),
            person("P1", "Pat Keane"),
            person("P2", "Sam Aoki"),
        ],
        [
            client_edge("cr1", "R", "A"),
            client_edge("cr2", "R", "Q"),
            jobrole_edge("j1", "P1", "A"),
            jobrole_edge("j2", "P1", "B"),
            jobrole_edge("j3", "P2", "B"),
            jobrole_edge("j4", "P2", "T", role=JobRole.BOARD_MEMBER, tense=Tense.FORMER),
            b2b_edge("b2", "B", "T"),
        ],
    )
    return ScoredSnapshot.build(g, variant="d", gamma=0.95)


@pytest.fixture
def snap():
    return ecosystem_snapshot()


@pytest.fixture
def diamond_snap(diamond):
    return ScoredSnapshot.build(diamond)


class TestSnapshotBasics:
    def test_graph_frozen_and_scores_stored(self, snap):
        assert snap.graph.frozen
        assert snap.scores["A"] == pytest.approx(0.475)
        assert snap.scores["B"] == pytest.approx(0.95**3 / 2)
        assert snap.scores["T"] == pytest.approx(0.95**4 / 4)

    def test_ranks_cover_non_root_companies(self, snap):
        assert set(snap.ranks) == {"A", "B", "T", "Q"}
        assert snap.ranks["A"] == 1  # score tie with Q, id break
        assert snap.ranks["Q"] == 2
        assert snap.ranks["B"] == 3
        assert snap.ranks["T"] == 4

    def test_summary_fields(self, snap):
        summary = snap.company_summary("B")
        assert summary.name == "BlackOrange"
        assert summary.location == "Zurich"
        assert summary.rank == 3
        payload = summary.to_dict()
        assert payload["yearFounded"] is None
        assert payload["score"] == snap.scores["B"]

    def test_person_is_not_a_company(self, snap):
        with pytest.raises(NodeNotFoundError):
            snap.company_summary("P1")


class TestSearch:
    def test_exact_name_first(self, snap):
        results = search_companies(snap, "BlackOrange")
        assert results[0].id == "B"

    def test_prefix_match_with_attrs(self, snap):
        results = search_companies(snap, "Black")
        assert [r.id for r in results] == ["B"]
        assert results[0].score == snap.scores["B"]

    def test_substring_ranked_by_score(self, snap):
        results = search_companies(snap, "o")
        assert [r.id for r in results] == ["R", "Q", "B", "T"]

    def test_case_insensitive(self, snap):
        assert [r.id for r in search_companies(snap, "blackORANGE")] == ["B"]

    def test_no_match_empty(self, snap):
        assert search_companies(snap, "zzz") == []

    def test_limit(self, snap):
        assert len(search_companies(snap, "o", limit=2)) == 2

    def test_empty_query_rejected(self, snap):
        with pytest.raises(ValueError):
            search_companies(snap, "")


class TestRankList:
    def test_orders_by_score(self, snap):
        assert [c.id for c in rank_list(snap, ["T", "A", "B"])] == ["A", "B", "T"]

    def test_singleton(self, snap):
        assert [c.id for c in rank_list(snap, ["B"])] == ["B"]

    def test_duplicates_removed(self, snap):
        assert [c.id for c in rank_list(snap, ["B", "T", "B"])] == ["B", "T"]

    def test_idempotent(self, snap):
        once = [c.id for c in rank_list(snap, ["T", "B", "A"])]
        twice = [c.id for c in rank_list(snap, once)]
        assert once == twice

    def test_unknown_id_identified(self, snap):
        with pytest.raises(NodeNotFoundError) as err:
            rank_list(snap, ["A", "nope"])
        assert err.value.node_id == "nope"


class TestWhitespace:
    def test_two_hop_neighbor_included(self, snap):
        results = whitespace_connections(snap, "A")
        assert [c.id for c in results] == ["B"]  # T is 3 hops out

    def test_client_surrounded_by_clients_empty(self, snap):
        assert whitespace_connections(snap, "Q") == []

    def test_limit_keeps_best(self, snap):
        results = whitespace_connections(snap, "B", limit=1, hops=2)
        assert [c.id for c in results] == ["T"]

    def test_wider_horizon_reaches_further(self, snap):
        results = whitespace_connections(snap, "A", hops=4)
        assert [c.id for c in results] == ["B", "T"]

    def test_unknown_id(self, snap):
        with pytest.raises(NodeNotFoundError):
            whitespace_connections(snap, "nope")


class TestSubgraphToRoot:
    def test_adjacent_target(self, snap):
        view = subgraph_to_root(snap, "A")
        assert {node.id for node, _ in view.nodes} == {"R", "A"}
        assert {e.edge_id for e in view.edges} == {"cr1"}
        assert view.paths_included == 1

    def test_diamond_two_paths(self, diamond_snap):
        view = subgraph_to_root(diamond_snap, "t", max_paths=2)
        assert {node.id for node, _ in view.nodes} == {"s", "a", "b", "t"}
        assert len(view.edges) == 4
        assert view.paths_included == 2

    def test_diamond_single_path_deterministic(self, diamond_snap):
        view = subgraph_to_root(diamond_snap, "t", max_paths=1)
        assert [node.id for node, _ in view.nodes] == ["s", "a", "t"]
        assert view.paths_included == 1

    def test_matches_brute_force_path_set(self, snap):
        view = subgraph_to_root(snap, "T", max_paths=2)
        expected = oracles.k_shortest_simple_paths(snap.graph, "R", "T", 2)
        got = k_shortest_paths(snap.graph, "R", "T", 2)
        assert got == expected
        covered = {node.id for node, _ in view.nodes}
        assert covered == {n for path in expected for n in path}

    def test_contains_minimal_path(self, snap):
        view = subgraph_to_root(snap, "B", max_paths=3)
        assert {node.id for node, _ in view.nodes} >= {"R", "A", "P1", "B"}

    def test_disconnected_target(self):
        g = build_graph("R", [company("R"), company("X")], [])
        snap = ScoredSnapshot.build(g)
        with pytest.raises(DisconnectedError):
            subgraph_to_root(snap, "X")

    def test_unknown_target(self, snap):
        with pytest.raises(NodeNotFoundError):
            subgraph_to_root(snap, "nope")

    def test_parallel_edges_all_attached(self):
        g = build_graph("R", [company("R"), company("A")], [])
        g.add_edge(client_edge("c1", "R", "A"))
        g.add_edge(b2b_edge("b1", "R", "A"))
        snap = ScoredSnapshot.build(g)
        view = subgraph_to_root(snap, "A")
        assert {e.edge_id for e in view.edges} == {"c1", "b1"}


class TestExpandNode:
    def test_isolated_node_empty_fragment(self):
        g = build_graph("R", [company("R"), company("X")], [])
        snap = ScoredSnapshot.build(g)
        view = expand_node(snap, "X")
        assert view.nodes == []
        assert view.edges == []

    def test_limit_keeps_highest_scored(self, snap):
        view = expand_node(snap, "B", limit=2)
        assert [node.id for node, _ in view.nodes] == ["P1", "P2"]

    def test_edge_labels_passed_through(self, snap):
        view = expand_node(snap, "T", limit=5)
        tenses = {e.edge_id: e.label.tense for e in view.edges}
        assert tenses["j4"] == Tense.FORMER

    def test_unknown_id(self, snap):
        with pytest.raises(NodeNotFoundError):
            expand_node(snap, "nope")


class TestKShortestAgainstOracle:
    @pytest.mark.parametrize("seed", range(25))
    def test_random_graphs(self, seed):
        import random

        from conftest import random_company_graph

        g = random_company_graph(random.Random(40_000 + seed), max_nodes=9)
        ids = sorted(g.node_ids())
        target = ids[-1]
        expected = oracles.k_shortest_simple_paths(g, g.root_id, target, 4)
        if not expected:
            with pytest.raises(DisconnectedError):
                k_shortest_paths(g, g.root_id, target, 4)
            return
        got = k_shortest_paths(g, g.root_id, target, 4)
        assert got == expected
