import random

import pytest

from flowrank.model import (
    EcosystemGraph,
    Edge,
    EdgeCategory,
    EdgeLabel,
    JobRole,
    Node,
    NodeKind,
    Tense,
)

B2B = EdgeLabel(EdgeCategory.B2B, b2b_type="sponsor")
CLIENT = EdgeLabel(EdgeCategory.CLIENT)


def company(node_id, name=None, **attrs):
    return Node(node_id, NodeKind.COMPANY, name or node_id, attrs=attrs or None)


def person(node_id, name=None):
    return Node(node_id, NodeKind.PERSON, name or node_id)


def b2b_edge(edge_id, u, v, cost=1.0, weight=1.0):
    return Edge(edge_id, u, v, B2B, cost, weight)


def client_edge(edge_id, root, client):
    return Edge(edge_id, root, client, CLIENT)


def jobrole_edge(edge_id, person_id, company_id, role=JobRole.EXECUTIVE, tense=Tense.CURRENT):
    return Edge(edge_id, person_id, company_id, EdgeLabel(EdgeCategory.JOB_ROLE, role, tense))


def build_graph(root_id, nodes, edges):
    g = EcosystemGraph(root_id)
    for node in nodes:
        g.add_node(node)
    for edge in edges:
        g.add_edge(edge)
    return g


@pytest.fixture
def three_node():
    """Root R, client company C, person P who is a current executive of C."""
    return build_graph(
        "R",
        [company("R", "Root Corp"), company("C", "Client Co"), person("P", "Pat Example")],
        [client_edge("e1", "R", "C"), jobrole_edge("e2", "P", "C")],
    )


@pytest.fixture
def diamond():
    """Uniform-cost square: s-a, s-b, a-t, b-t."""
    return build_graph(
        "s",
        [company(x) for x in "sabt"],
        [
            b2b_edge("e1", "s", "a"),
            b2b_edge("e2", "s", "b"),
            b2b_edge("e3", "a", "t"),
            b2b_edge("e4", "b", "t"),
        ],
    )


@pytest.fixture
def triangle():
    """Uniform-cost triangle: s-a, s-b, a-b."""
    return build_graph(
        "s",
        [company(x) for x in "sab"],
        [b2b_edge("e1", "s", "a"), b2b_edge("e2", "s", "b"), b2b_edge("e3", "a", "b")],
    )


def random_digraph(
    rng, max_nodes=12, two_cycles=False, self_loops=False, ensure_cycle=True, no_isolated=False
):
    """Random directed multigraph; ``no_isolated``/``two_cycles=False`` keep it
    inside the validity domain of the greedy retention guarantee."""
    from flowrank.analysis import DirectedMultigraph

    n = rng.randint(3, max_nodes)
    ids = [f"v{i:02d}" for i in range(n)]
    dg = DirectedMultigraph()
    for node_id in ids:
        dg.add_node(node_id)
    seen_pairs = set()
    touched = set()
    m = rng.randint(n, 3 * n)
    k = 0

    def put(u, v):
        nonlocal k
        seen_pairs.add((u, v))
        touched.update((u, v))
        dg.add_edge(f"d{k:03d}", u, v)
        k += 1

    for _ in range(m):
        u, v = rng.choice(ids), rng.choice(ids)
        if u == v:
            if not self_loops:
                continue
        elif not two_cycles and (v, u) in seen_pairs:
            continue
        put(u, v)
    if ensure_cycle:
        cycle = rng.sample(ids, 3)
        for i in range(3):
            u, v = cycle[i], cycle[(i + 1) % 3]
            if not two_cycles and (v, u) in seen_pairs:
                continue
            put(u, v)
    if no_isolated:
        for v in ids:
            if v not in touched:
                u = rng.choice([x for x in ids if x != v])
                put(v, u) if rng.random() < 0.5 else put(u, v)
    return dg


def random_company_graph(
    rng: random.Random,
    max_nodes: int = 12,
    parallel: bool = True,
    self_loops: bool = False,
    cost_choices=(1.0,),
    weight_choices=(1.0,),
    edge_factor: float = 1.6,
):
    """Random undirected company multigraph rooted at node n00."""
    n = rng.randint(2, max_nodes)
    ids = [f"n{i:02d}" for i in range(n)]
    g = EcosystemGraph(ids[0])
    for node_id in ids:
        g.add_node(company(node_id))
    m = rng.randint(1, max(1, int(n * edge_factor)))
    k = 0
    for _ in range(m):
        u = rng.choice(ids)
        v = rng.choice(ids)
        if u == v and not self_loops:
            continue
        g.add_edge(
            Edge(
                f"e{k:03d}",
                u,
                v,
                B2B,
                cost=rng.choice(cost_choices),
                weight=rng.choice(weight_choices),
            )
        )
        k += 1
        if parallel and rng.random() < 0.15 and u != v:
            g.add_edge(Edge(f"e{k:03d}", u, v, B2B, cost=rng.choice(cost_choices)))
            k += 1
    return g
