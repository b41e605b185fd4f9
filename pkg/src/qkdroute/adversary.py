"""Worst-case topologies and request sequences for SAP and WSP.

SAP_WORST: two disjoint ``s -> d`` chains, the top one with ``|E| // 2``
edges and the bottom one with one more, every buffer holding ``beta`` bits.
``beta / mu`` full-size ``s -> d`` requests drain the top chain.  Then
``beta`` single-bit requests arrive for each top-chain link.

WSP_WORST: a direct ``s -> d`` link of ``beta`` bits plus an ``s -> d``
chain of ``|E| - 1`` links of ``2 * beta`` bits.  The same opening drains half
of the chain, and then ``2 * beta`` single-bit requests arrive per chain link.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from qkdroute.errors import InvalidInstance
from qkdroute.network import Edge, Network, Path, validate_network
from qkdroute.online import Request, Strategy, Trace, replay


class Construction(str, Enum):
    SAP_WORST = "SAP_WORST"
    WSP_WORST = "WSP_WORST"

    @property
    def strategy(self) -> Strategy:
        return Strategy.SAP if self is Construction.SAP_WORST else Strategy.WSP


@dataclass(frozen=True)
class AdversarialInstance:
    net: Network
    trace: Trace
    predicted_ratio: Fraction
    construction: Construction
    edge_count: int
    beta: int
    mu: int
    # the assignment under which every request is served
    opt_assignment: tuple[Path, ...]

    @property
    def params(self) -> tuple[int, int, int]:
        return self.edge_count, self.beta, self.mu


def predicted_sap_ratio(edge_count: int, mu: int) -> Fraction:
    return Fraction(1, 1 + mu * (edge_count // 2))


def predicted_wsp_ratio(edge_count: int, mu: int) -> Fraction:
    return Fraction(1, 2) + Fraction(1, 2 + 4 * mu * (edge_count - 1))


def _check_budget(beta: int, mu: int) -> None:
    if not (isinstance(beta, int) and isinstance(mu, int)) or mu < 1 or beta < mu:
        raise InvalidInstance(f"need beta >= mu >= 1, got beta={beta}, mu={mu}")
    if beta % mu:
        raise InvalidInstance(f"beta={beta} is not a multiple of mu={mu}")


def _chain(prefix: str, hops: int) -> Path:
    names = ["s"] + [f"{prefix}{k}" for k in range(1, hops)] + ["d"]
    return tuple(Edge(a, b) for a, b in zip(names, names[1:]))


def _build(edges: list[tuple[Path, int]]) -> Network:
    nodes = sorted({n for path, _ in edges for e in path for n in e})
    return validate_network(nodes, [(e.src, e.dst, cap) for path, cap in edges for e in path])


def gen_sap_worst(edge_count: int, beta: int, mu: int) -> AdversarialInstance:
    if edge_count < 3 or edge_count % 2 == 0:
        raise InvalidInstance(f"SAP_WORST needs an odd edge count >= 3, got {edge_count}")
    _check_budget(beta, mu)
    half = edge_count // 2
    top, bottom = _chain("t", half), _chain("b", half + 1)
    net = _build([(top, beta), (bottom, beta)])

    opening = [Request("s", "d", mu)] * (beta // mu)
    per_link = [Request(e.src, e.dst, 1) for e in top for _ in range(beta)]
    trace = Trace(mu, tuple(opening + per_link))
    assignment = tuple([bottom] * len(opening) + [(Edge(r.source, r.dest),) for r in per_link])
    return AdversarialInstance(
        net, trace, predicted_sap_ratio(edge_count, mu), Construction.SAP_WORST,
        edge_count, beta, mu, assignment,
    )


def gen_wsp_worst(edge_count: int, beta: int, mu: int) -> AdversarialInstance:
    if edge_count < 2:
        raise InvalidInstance(f"WSP_WORST needs a direct link and a chain, got {edge_count} edges")
    if edge_count == 2:
        raise InvalidInstance(
            "WSP_WORST with 2 edges needs two parallel s->d links, which networks disallow"
        )
    _check_budget(beta, mu)
    direct = (Edge("s", "d"),)
    chain = _chain("b", edge_count - 1)
    net = _build([(direct, beta), (chain, 2 * beta)])

    opening = [Request("s", "d", mu)] * (beta // mu)
    per_link = [Request(e.src, e.dst, 1) for e in chain for _ in range(2 * beta)]
    trace = Trace(mu, tuple(opening + per_link))
    assignment = tuple([direct] * len(opening) + [(Edge(r.source, r.dest),) for r in per_link])
    return AdversarialInstance(
        net, trace, predicted_wsp_ratio(edge_count, mu), Construction.WSP_WORST,
        edge_count, beta, mu, assignment,
    )


GENERATORS = {
    Construction.SAP_WORST: gen_sap_worst,
    Construction.WSP_WORST: gen_wsp_worst,
}


def generate(construction: Construction | str, edge_count: int, beta: int, mu: int) -> AdversarialInstance:
    return GENERATORS[Construction(construction)](edge_count, beta, mu)


def constructive_opt(instance: AdversarialInstance) -> int:
    """Served count of the full-service assignment, verified by replaying it."""
    replay(instance.net, instance.trace, instance.opt_assignment)
    return sum(1 for p in instance.opt_assignment if p)
