"""Seeded random instances for property checks and fuzzing."""

from __future__ import annotations

import random
from itertools import permutations

from qkdroute.network import Network, validate_network
from qkdroute.online import Request, Trace
from qkdroute.paths import enumerate_paths
from qkdroute.planning.model import Contract, Objective, PlanProblem, build_problem


def random_network(
    rng: random.Random, max_nodes: int = 5, max_edges: int = 8, max_capacity: int = 6
) -> Network:
    n = rng.randint(2, max_nodes)
    nodes = [f"n{k}" for k in range(n)]
    pairs = list(permutations(nodes, 2))
    chosen = rng.sample(pairs, rng.randint(1, min(max_edges, len(pairs))))
    return validate_network(nodes, [(a, b, rng.randint(1, max_capacity)) for a, b in chosen])


def routable_pairs(net: Network, max_hops: int) -> list[tuple[str, str]]:
    return [
        (s, d)
        for s, d in permutations(net.nodes, 2)
        if enumerate_paths(net, s, d, max_hops).paths
    ]


def random_plan_problem(
    rng: random.Random,
    objective: Objective | str,
    max_nodes: int = 5,
    max_edges: int = 8,
    max_capacity: int = 6,
    max_contracts: int = 3,
    max_bandwidth: int = 4,
    max_priority: int = 5,
    max_hops: int = 3,
) -> PlanProblem:
    while True:
        net = random_network(rng, max_nodes, max_edges, max_capacity)
        hops = rng.randint(1, max_hops)
        pairs = routable_pairs(net, hops)
        if pairs:
            break
    contracts = [
        Contract(*rng.choice(pairs), rng.randint(1, max_bandwidth), rng.randint(1, max_priority))
        for _ in range(rng.randint(1, max_contracts))
    ]
    return build_problem(net, contracts, hops, objective)


def random_trace(
    rng: random.Random, net: Network, max_requests: int = 10, mu: int = 2
) -> Trace:
    pairs = list(permutations(net.nodes, 2))
    requests = [
        Request(*rng.choice(pairs), rng.randint(1, mu))
        for _ in range(rng.randint(0, max_requests))
    ]
    return Trace(mu, tuple(requests))
