import pytest

from flowrank.errors import (
    DanglingEdgeError,
    DuplicateEdgeError,
    DuplicateNodeError,
    FrozenGraphError,
    InvalidClientEdgeError,
    InvalidEdgeError,
    MissingRootError,
    NoClientEdgeError,
    NodeNotFoundError,
)
from flowrank.model import EdgeCategory, EdgeLabel

from conftest import b2b_edge, build_graph, client_edge, company, jobrole_edge, person


class TestInvariants:
    def test_three_node_fixture_shape(self, three_node):
        assert three_node.node_count == 3
        assert three_node.edge_count == 2

    def test_dangling_edge_rejected(self):
        g = build_graph("R", [company("R")], [])
        with pytest.raises(DanglingEdgeError):
            g.add_edge(b2b_edge("e1", "R", "X"))

    def test_client_edge_must_touch_root(self):
        g = build_graph("R", [company("R"), company("A"), company("B")], [])
        with pytest.raises(InvalidClientEdgeError):
            g.add_edge(client_edge("e1", "A", "B"))

    def test_client_self_loop_at_root_rejected(self):
        g = build_graph("R", [company("R")], [])
        with pytest.raises(InvalidClientEdgeError):
            g.add_edge(client_edge("e1", "R", "R"))

    def test_client_edge_to_person_rejected(self):
        g = build_graph("R", [company("R"), person("P")], [])
        with pytest.raises(InvalidClientEdgeError):
            g.add_edge(client_edge("e1", "R", "P"))

    def test_jobrole_requires_person_and_company(self):
        g = build_graph("R", [company("R"), company("A")], [])
        with pytest.raises(InvalidEdgeError):
            g.add_edge(jobrole_edge("e1", "R", "A"))

    def test_nonpositive_cost_rejected(self):
        g = build_graph("R", [company("R"), company("A")], [])
        with pytest.raises(InvalidEdgeError):
            g.add_edge(b2b_edge("e1", "R", "A", cost=0.0))
        with pytest.raises(InvalidEdgeError):
            g.add_edge(b2b_edge("e1", "R", "A", weight=-1.0))

    def test_duplicate_ids_rejected(self, three_node):
        with pytest.raises(DuplicateNodeError):
            three_node.add_node(company("R"))
        with pytest.raises(DuplicateEdgeError):
            three_node.add_edge(b2b_edge("e1", "R", "C"))

    def test_missing_root_detected(self):
        g = build_graph("Z", [company("R")], [])
        with pytest.raises(MissingRootError):
            g.validate()

    def test_person_root_rejected(self):
        g = build_graph("P", [person("P")], [])
        with pytest.raises(MissingRootError):
            g.validate()

    def test_client_label_is_stateless(self):
        with pytest.raises(InvalidEdgeError):
            EdgeLabel(EdgeCategory.CLIENT, b2b_state="active").validate()

    def test_frozen_graph_rejects_mutation(self, three_node):
        three_node.freeze()
        with pytest.raises(FrozenGraphError):
            three_node.add_node(company("X"))

    def test_parallel_edges_preserved(self):
        g = build_graph("R", [company("R"), company("A")], [])
        g.add_edge(b2b_edge("e1", "R", "A"))
        g.add_edge(b2b_edge("e2", "R", "A"))
        assert g.edge_count == 2
        assert len(g.edges_between("R", "A")) == 2
        assert g.degree("R") == 2

    def test_self_loop_allowed_at_ingestion(self):
        g = build_graph("R", [company("R"), company("A")], [])
        g.add_edge(b2b_edge("e1", "A", "A"))
        assert g.degree("A") == 1


class TestClientLinks:
    def test_remove_returns_edge(self, three_node):
        removed = three_node.remove_client_link("C")
        assert removed.edge_id == "e1"
        assert three_node.edge_count == 1

    def test_remove_then_add_restores_multiset(self, three_node):
        before = three_node.edge_multiset()
        removed = three_node.remove_client_link("C")
        assert three_node.edge_multiset() != before
        three_node.add_client_link("C", removed)
        assert three_node.edge_multiset() == before

    def test_remove_non_client_raises(self, three_node):
        with pytest.raises(NoClientEdgeError):
            three_node.remove_client_link("P")

    def test_add_wrong_endpoint_rejected(self, three_node):
        edge = client_edge("e9", "R", "C")
        with pytest.raises(InvalidClientEdgeError):
            three_node.add_client_link("P", edge)

    def test_add_non_client_edge_rejected(self, three_node):
        with pytest.raises(InvalidClientEdgeError):
            three_node.add_client_link("C", b2b_edge("e9", "R", "C"))

    def test_add_remove_add_idempotent(self):
        g = build_graph("R", [company("R"), company("A")], [])
        edge = client_edge("c1", "R", "A")
        g.add_client_link("A", edge)
        first = g.edge_multiset()
        returned = g.remove_client_link("A")
        g.add_client_link("A", returned)
        assert g.edge_multiset() == first

    def test_parallel_client_edges_drain_deterministically(self):
        g = build_graph("R", [company("R"), company("A")], [])
        g.add_client_link("A", client_edge("c2", "R", "A"))
        g.add_client_link("A", client_edge("c1", "R", "A"))
        assert g.remove_client_link("A").edge_id == "c1"
        assert g.remove_client_link("A").edge_id == "c2"
        with pytest.raises(NoClientEdgeError):
            g.remove_client_link("A")


class TestClientPartition:
    def test_spec_fixture_partition(self):
        # C1 client also linked to a person, C2 client-edge only, C3 non-client
        g = build_graph(
            "R",
            [company("R"), company("C1"), company("C2"), company("C3"), person("P")],
            [
                client_edge("e1", "R", "C1"),
                client_edge("e2", "R", "C2"),
                jobrole_edge("e3", "P", "C1"),
                b2b_edge("e4", "C3", "C1"),
            ],
        )
        clients, non_clients, root_only = g.client_partition()
        assert clients == {"C1", "C2"}
        assert non_clients == {"C3"}
        assert root_only == {"C2"}

    def test_no_companies_besides_root(self):
        g = build_graph("R", [company("R"), person("P")], [])
        assert g.client_partition() == (set(), set(), set())

    def test_partition_disjoint_and_exhaustive(self, three_node):
        clients, non_clients, root_only = three_node.client_partition()
        assert clients | non_clients == {"C"}
        assert clients & non_clients == set()
        assert root_only <= clients

    def test_unknown_node_lookup(self, three_node):
        with pytest.raises(NodeNotFoundError):
            three_node.node("missing")
        with pytest.raises(NodeNotFoundError):
            three_node.degree("missing")


class TestCsrView:
    def test_half_edges_and_uniform_cost(self, diamond):
        view = diamond.csr()
        assert view.indices.shape[0] == 2 * diamond.edge_count
        assert view.uniform_cost == 1.0
        assert view.node_ids == sorted(diamond.node_ids())

    def test_cache_invalidated_on_mutation(self, three_node):
        first = three_node.csr()
        assert three_node.csr() is first
        three_node.remove_client_link("C")
        assert three_node.csr() is not first

    def test_mixed_costs_not_uniform(self):
        g = build_graph("R", [company("R"), company("A")], [])
        g.add_edge(b2b_edge("e1", "R", "A", cost=1.0))
        g.add_edge(b2b_edge("e2", "R", "A", cost=2.0))
        assert g.csr().uniform_cost is None

    def test_empty_graph_view(self):
        g = build_graph("R", [company("R")], [])
        view = g.csr()
        assert view.indptr.tolist() == [0, 0]
        assert view.uniform_cost == 1.0
