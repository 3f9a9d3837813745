"""Synthetic client-ecosystem generator.

Reproduces the published aggregate shape of the real network (which is
confidential): two companies for every person, a 1:14 client/non-client
ratio, and about half the clients connected to nothing but the root. Wiring
uses preferential attachment so company degrees are heavy-tailed.

Clienthood is made learnable ("signal"): connected clients plus a slice of
non-client "warm prospects" form a core that shares persons and B2B
partners, so held-out clients stay topologically close to the remaining
ones. Background companies and persons wire independently of clienthood.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from .errors import InvalidConfigError
from .model import (
    CLIENT_LABEL,
    EcosystemGraph,
    Edge,
    EdgeCategory,
    EdgeLabel,
    JobRole,
    Node,
    NodeKind,
    Tense,
)

DEFAULT_EDGE_MIX: Mapping[str, float] = {
    "executive": 0.55,  # vs board_member
    "current": 0.7,  # vs former
    "b2b_sponsor": 0.25,
    "b2b_subsidiary": 0.35,
    "b2b_investor": 0.4,
    "b2b_active": 0.6,
    "b2b_pending": 0.15,
    "b2b_prior": 0.15,
    "b2b_cancelled": 0.1,
}

ROOT_ID = "root"


@dataclass
class GenConfig:
    company_count: int = 150  # companies excluding the root
    person_count: Optional[int] = None  # default keeps persons at a third of all nodes
    client_ratio: float = 1.0 / 15.0
    root_only_client_fraction: float = 0.5
    job_roles_per_person: float = 2.0
    b2b_per_company: float = 1.0
    attachment_exponent: float = 1.0
    signal: bool = True
    signal_strength: float = 0.8
    warm_prospect_fraction: float = 0.5
    edge_mix: Mapping[str, float] = field(default_factory=lambda: dict(DEFAULT_EDGE_MIX))
    seed: int = 0

    def resolved_person_count(self) -> int:
        if self.person_count is not None:
            return self.person_count
        return (self.company_count + 1) // 2

    def validate(self) -> None:
        if self.company_count < 1:
            raise InvalidConfigError("company_count must be >= 1")
        if self.resolved_person_count() < 1:
            raise InvalidConfigError("person_count must be >= 1")
        for name in ("client_ratio", "root_only_client_fraction", "signal_strength",
                     "warm_prospect_fraction"):
            value = getattr(self, name)
            if not (0.0 <= value <= 1.0):
                raise InvalidConfigError(f"{name} must be within [0, 1], got {value}")
        if self.job_roles_per_person < 0 or self.b2b_per_company < 0:
            raise InvalidConfigError("edge densities must be >= 0")
        if self.attachment_exponent <= 0:
            raise InvalidConfigError("attachment_exponent must be > 0")


class _Attachment:
    """Degree-proportional sampling pool with +1 smoothing.

    Exponent 1.0 uses the repeated-entry bag (O(1) draws); other exponents
    weight each draw by (degree + 1) ** exponent.
    """

    def __init__(self, members: list[str], exponent: float, rng: random.Random):
        self.members = list(members)
        self.exponent = exponent
        self.rng = rng
        self.degrees = {m: 0 for m in self.members}
        self.bag = list(self.members)

    def pick(self) -> str:
        if self.exponent == 1.0:
            return self.rng.choice(self.bag)
        weights = [(self.degrees[m] + 1.0) ** self.exponent for m in self.members]
        return self.rng.choices(self.members, weights=weights)[0]

    def bump(self, member: str) -> None:
        if member in self.degrees:
            self.degrees[member] += 1
            if self.exponent == 1.0:
                self.bag.append(member)


def _company_id(i: int) -> str:
    return f"c{i:06d}"


def _person_id(i: int) -> str:
    return f"p{i:06d}"


def generate(cfg: GenConfig) -> EcosystemGraph:
    """Build a validated ecosystem graph from ``cfg``; fixed seed, fixed bytes."""
    cfg.validate()
    rng = random.Random(cfg.seed)
    mix = {**DEFAULT_EDGE_MIX, **cfg.edge_mix}

    companies = [_company_id(i) for i in range(cfg.company_count)]
    persons = [_person_id(i) for i in range(cfg.resolved_person_count())]
    client_count = round(cfg.company_count * cfg.client_ratio)
    root_only_count = round(client_count * cfg.root_only_client_fraction)

    shuffled = companies[:]
    rng.shuffle(shuffled)
    root_only = shuffled[:root_only_count]
    connected_clients = shuffled[root_only_count:client_count]
    warm_count = (
        round(len(connected_clients) * cfg.warm_prospect_fraction) if cfg.signal else 0
    )
    warm_prospects = shuffled[client_count : client_count + warm_count]
    core = connected_clients + warm_prospects
    wirable = [c for c in shuffled[root_only_count:]]

    g = EcosystemGraph(ROOT_ID)
    g.add_node(Node(ROOT_ID, NodeKind.COMPANY, "Root Corp", "The selling organization."))
    for company in companies:
        g.add_node(
            Node(
                company,
                NodeKind.COMPANY,
                f"Company {company[1:]}",
                attrs={
                    "status": "active",
                    "location": rng.choice(("Dublin", "London", "Zurich", "Austin", "Oslo")),
                    "year_founded": str(rng.randint(1900, 2020)),
                },
            )
        )
    for person in persons:
        g.add_node(Node(person, NodeKind.PERSON, f"Person {person[1:]}"))

    edge_seq = 0

    def next_edge_id() -> str:
        nonlocal edge_seq
        edge_seq += 1
        return f"e{edge_seq:07d}"

    for client in root_only + connected_clients:
        g.add_edge(Edge(next_edge_id(), ROOT_ID, client, CLIENT_LABEL))

    pool_all = _Attachment(wirable, cfg.attachment_exponent, rng)
    pool_core = _Attachment(core, cfg.attachment_exponent, rng) if core else None

    def job_label() -> EdgeLabel:
        role = JobRole.EXECUTIVE if rng.random() < mix["executive"] else JobRole.BOARD_MEMBER
        tense = Tense.CURRENT if rng.random() < mix["current"] else Tense.FORMER
        return EdgeLabel(EdgeCategory.JOB_ROLE, role=role, tense=tense)

    def b2b_label() -> EdgeLabel:
        kind = rng.choices(
            ("sponsor", "subsidiary", "investor"),
            weights=(mix["b2b_sponsor"], mix["b2b_subsidiary"], mix["b2b_investor"]),
        )[0]
        state = rng.choices(
            ("active", "pending", "prior", "cancelled"),
            weights=(
                mix["b2b_active"],
                mix["b2b_pending"],
                mix["b2b_prior"],
                mix["b2b_cancelled"],
            ),
        )[0]
        return EdgeLabel(EdgeCategory.B2B, b2b_type=kind, b2b_state=state)

    def edges_for_mean(mean: float) -> int:
        base = int(mean)
        return base + (1 if rng.random() < mean - base else 0)

    pool_clients = (
        _Attachment(connected_clients, cfg.attachment_exponent, rng)
        if connected_clients
        else None
    )
    core_person_count = 0
    if cfg.signal and pool_clients is not None:
        core_person_count = min(
            len(persons), round(len(connected_clients) * 2.0 * cfg.signal_strength)
        )

    def bump_everywhere(target: str) -> None:
        for pool in (pool_all, pool_core, pool_clients):
            if pool is not None:
                pool.bump(target)

    for i, person in enumerate(persons):
        if i < core_person_count:
            # core persons bridge clients to each other (and occasionally to
            # warm prospects), planting the learnable structure
            link_count = max(2, edges_for_mean(cfg.job_roles_per_person))
            for j in range(link_count):
                pool = pool_clients
                if j > 0 and pool_core is not None and rng.random() < 0.3:
                    pool = pool_core
                target = pool.pick()
                g.add_edge(Edge(next_edge_id(), person, target, job_label()))
                bump_everywhere(target)
        else:
            for _ in range(max(1, edges_for_mean(cfg.job_roles_per_person))):
                target = pool_all.pick()
                g.add_edge(Edge(next_edge_id(), person, target, job_label()))
                bump_everywhere(target)

    b2b_count = round(cfg.company_count * cfg.b2b_per_company)
    core_b2b = round(len(core) * 0.5) if cfg.signal and len(core) >= 2 else 0
    for k in range(b2b_count):
        pool = pool_core if k < core_b2b else pool_all
        if pool is None or len(pool.members) < 2:
            pool = pool_all
        if len(pool.members) < 2:
            break
        u = pool.pick()
        v = pool.pick()
        if u == v:
            continue
        g.add_edge(Edge(next_edge_id(), u, v, b2b_label()))
        bump_everywhere(u)
        bump_everywhere(v)

    # wiring is random, so guarantee the designed root-only count exactly:
    # every connected client keeps at least one non-client edge
    for client in connected_clients:
        if g.degree(client) == 1:
            person = persons[rng.randrange(max(1, core_person_count or len(persons)))]
            g.add_edge(Edge(next_edge_id(), person, client, job_label()))
            bump_everywhere(client)

    g.validate()
    return g


def generate_uniform(node_count: int, edge_count: int, seed: int = 0) -> EcosystemGraph:
    """Large flat benchmark graph: random B2B pairs, root wired into the bulk.

    Built through the unchecked bulk path; every edge has cost=weight=1 so
    the breadth-first scoring kernels apply. Used by the performance suite
    and the kernel benchmark, not by the evaluation workflow.
    """
    if node_count < 2 or edge_count < 1:
        raise InvalidConfigError("need at least 2 nodes and 1 edge")
    rng = np.random.default_rng(seed)
    ids = [ROOT_ID] + [_company_id(i) for i in range(node_count - 1)]
    g = EcosystemGraph(ROOT_ID)
    nodes = {
        node_id: Node(node_id, NodeKind.COMPANY, node_id) for node_id in ids
    }
    g._nodes.update(nodes)

    label = EdgeLabel(EdgeCategory.B2B, b2b_type="sponsor")
    src = rng.integers(0, node_count, size=edge_count)
    dst = rng.integers(0, node_count, size=edge_count)
    root_links = min(8, edge_count)
    src[:root_links] = 0  # keep the root inside the giant component
    edges = g._edges
    for k in range(edge_count):
        edge_id = f"e{k:07d}"
        edges[edge_id] = Edge(edge_id, ids[src[k]], ids[dst[k]], label)
    g._bump()
    return g
