"""Directed networks with integer per-edge key capacities, and path predicates.

A path is a plain tuple of :class:`Edge`; the empty tuple is the rejection
path.  Nodes and edges are kept in lexicographic order so that every
"lexicographical order" in the planning model is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

from qkdroute.errors import InvalidNetwork


class Edge(NamedTuple):
    src: str
    dst: str

    def __str__(self) -> str:
        return f"({self.src},{self.dst})"


Path = tuple[Edge, ...]

EMPTY_PATH: Path = ()


@dataclass(frozen=True)
class Network:
    """Immutable directed graph ``(nodes, edges, capacity)``.

    Build instances through :func:`validate_network`; the constructor trusts
    its arguments.
    """

    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]
    capacity: Mapping[Edge, int] = field(compare=True)

    @cached_property
    def successors(self) -> dict[str, tuple[str, ...]]:
        succ: dict[str, list[str]] = {n: [] for n in self.nodes}
        for e in self.edges:
            succ[e.src].append(e.dst)
        return {n: tuple(sorted(vs)) for n, vs in succ.items()}

    @cached_property
    def predecessors(self) -> dict[str, tuple[str, ...]]:
        pred: dict[str, list[str]] = {n: [] for n in self.nodes}
        for e in self.edges:
            pred[e.dst].append(e.src)
        return {n: tuple(sorted(vs)) for n, vs in pred.items()}

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def has_node(self, node: str) -> bool:
        return node in self.successors

    def has_edge(self, edge: Edge) -> bool:
        return edge in self.edge_set


def validate_network(
    nodes: Iterable[str], edges: Iterable[tuple[str, str, int]]
) -> Network:
    """Check a raw node list and ``(src, dst, capacity)`` list and build a Network.

    All violations are collected; :class:`InvalidNetwork` carries the full list
    and no partial network is returned.
    """
    errors: list[str] = []
    node_list = list(nodes)
    seen_nodes: set[str] = set()
    for name in node_list:
        if not isinstance(name, str) or not name:
            errors.append(f"invalid node name {name!r}: must be a non-empty string")
        elif name in seen_nodes:
            errors.append(f"duplicate node {name!r}")
        else:
            seen_nodes.add(name)

    capacity: dict[Edge, int] = {}
    for raw in edges:
        src, dst, cap = raw
        edge = Edge(src, dst)
        for end in (src, dst):
            if end not in seen_nodes:
                errors.append(f"dangling endpoint {end!r} on edge {edge}")
        if src == dst:
            errors.append(f"self-loop {edge}")
        if isinstance(cap, bool) or not isinstance(cap, int):
            errors.append(f"non-integer capacity {cap!r} on edge {edge}")
        elif cap < 1:
            errors.append(f"non-positive capacity {cap} on edge {edge}")
        if edge in capacity:
            errors.append(f"duplicate edge {edge}")
        else:
            capacity[edge] = cap

    if errors:
        raise InvalidNetwork(errors)
    ordered_edges = tuple(sorted(capacity))
    return Network(
        nodes=tuple(sorted(seen_nodes)),
        edges=ordered_edges,
        capacity={e: capacity[e] for e in ordered_edges},
    )


def path_nodes(path: Path) -> tuple[str, ...]:
    """Node sequence visited by a connected path (empty for the empty path)."""
    if not path:
        return ()
    return (path[0].src,) + tuple(e.dst for e in path)


def is_valid_path(net: Network, path: Path) -> bool:
    """True iff every edge exists in ``net`` and consecutive edges connect."""
    for i, e in enumerate(path):
        if not net.has_edge(e):
            return False
        if i and path[i - 1].dst != e.src:
            return False
    return True


def is_simple_path(path: Path) -> bool:
    """True iff no node repeats along a valid path, endpoints included."""
    nodes = path_nodes(path)
    return len(set(nodes)) == len(nodes)


def bottleneck(net: Network, cap: Mapping[Edge, int], path: Path) -> int:
    """Minimum of ``cap`` over the edges of a non-empty valid path."""
    if not path:
        raise ValueError("bottleneck of the empty path is undefined")
    if not is_valid_path(net, path):
        raise ValueError(f"path {format_path(path)} is not valid in the network")
    missing = [e for e in path if e not in cap]
    if missing:
        raise KeyError(f"no capacity entry for {', '.join(map(str, missing))}")
    return min(cap[e] for e in path)


def format_path(path: Path) -> str:
    if not path:
        return "ε"
    return "->".join(path_nodes(path))
