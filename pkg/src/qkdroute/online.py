"""Online routing of single key requests over finite per-link key buffers.

Two strategies are provided:

* SAP, shortest available path: fewest hops among paths whose every link
  still buffers at least the requested number of bits.
* WSP, widest shortest path: largest bottleneck residual first, fewest hops
  second.  Width dominates, so a long wide path beats a short narrow one.

Ties are broken by canonical path order (lexicographic edge sequence).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Mapping, Sequence

from qkdroute.errors import InfeasiblePath, InvalidInput
from qkdroute.network import EMPTY_PATH, Edge, Network, Path, format_path


class Strategy(str, Enum):
    SAP = "SAP"
    WSP = "WSP"


@dataclass(frozen=True)
class Request:
    source: str
    dest: str
    bits: int

    def __post_init__(self) -> None:
        if self.source == self.dest:
            raise InvalidInput(f"request {self} has identical endpoints")
        if isinstance(self.bits, bool) or not isinstance(self.bits, int) or self.bits < 1:
            raise InvalidInput(f"request bits must be a positive integer, got {self.bits!r}")


@dataclass(frozen=True)
class Trace:
    mu: int
    requests: tuple[Request, ...]

    def __post_init__(self) -> None:
        if isinstance(self.mu, bool) or not isinstance(self.mu, int) or self.mu < 1:
            raise InvalidInput(f"mu must be a positive integer, got {self.mu!r}")
        object.__setattr__(self, "requests", tuple(self.requests))
        for k, r in enumerate(self.requests):
            if r.bits > self.mu:
                raise InvalidInput(f"request {k} asks {r.bits} bits > mu={self.mu}")

    def __len__(self) -> int:
        return len(self.requests)

    def check_against(self, net: Network) -> None:
        for k, r in enumerate(self.requests):
            for node in (r.source, r.dest):
                if not net.has_node(node):
                    raise InvalidInput(f"request {k} references unknown node {node!r}")


@dataclass(frozen=True)
class BufferState:
    residual: Mapping[Edge, int]

    @classmethod
    def nominal(cls, net: Network) -> "BufferState":
        return cls(dict(net.capacity))

    def __getitem__(self, e: Edge) -> int:
        return self.residual[e]


def _shortest(net: Network, usable: Callable[[Edge], bool], s: str, d: str) -> Path:
    """Fewest-hop, then lexicographically smallest, path over usable edges."""
    dist = {d: 0}
    queue = deque([d])
    while queue:
        v = queue.popleft()
        for u in net.predecessors[v]:
            if u not in dist and usable(Edge(u, v)):
                dist[u] = dist[v] + 1
                queue.append(u)
    if s not in dist:
        return EMPTY_PATH
    path = []
    u = s
    while u != d:
        # successors are sorted, so the first qualifying one is lexicographically least
        v = next(
            v for v in net.successors[u]
            if dist.get(v) == dist[u] - 1 and usable(Edge(u, v))
        )
        path.append(Edge(u, v))
        u = v
    return tuple(path)


def _reachable(net: Network, usable: Callable[[Edge], bool], s: str, d: str) -> bool:
    seen = {s}
    stack = [s]
    while stack:
        u = stack.pop()
        if u == d:
            return True
        for v in net.successors[u]:
            if v not in seen and usable(Edge(u, v)):
                seen.add(v)
                stack.append(v)
    return False


def sap_route(net: Network, state: BufferState, r: Request) -> Path:
    return _shortest(net, lambda e: state.residual[e] >= r.bits, r.source, r.dest)


def wsp_route(net: Network, state: BufferState, r: Request) -> Path:
    widths = sorted({w for w in state.residual.values() if w >= r.bits})

    def ok(t: int) -> bool:
        return _reachable(net, lambda e: state.residual[e] >= t, r.source, r.dest)

    if not widths or not ok(widths[0]):
        return EMPTY_PATH
    # reachability is monotone in the threshold: find the last feasible width
    lo, hi = 0, len(widths) - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if ok(widths[mid]):
            lo = mid
        else:
            hi = mid - 1
    width = widths[lo]
    return _shortest(net, lambda e: state.residual[e] >= width, r.source, r.dest)


ROUTERS: dict[Strategy, Callable[[Network, BufferState, Request], Path]] = {
    Strategy.SAP: sap_route,
    Strategy.WSP: wsp_route,
}


def serve(state: BufferState, r: Request, path: Path) -> BufferState:
    """Consume ``r.bits`` on every link of ``path``; infeasible paths are a hard error."""
    if not path:
        raise InfeasiblePath("cannot serve a request on the empty path")
    if path[0].src != r.source or path[-1].dst != r.dest:
        raise InfeasiblePath(f"path {format_path(path)} does not join {r.source} to {r.dest}")
    for a, b in zip(path, path[1:]):
        if a.dst != b.src:
            raise InfeasiblePath(f"path {format_path(path)} is not connected")
    residual = dict(state.residual)
    for e in path:
        if e not in residual:
            raise InfeasiblePath(f"edge {e} is not in the network")
        if residual[e] < r.bits:
            raise InfeasiblePath(f"edge {e} holds {residual[e]} bits < {r.bits}")
        residual[e] -= r.bits
    return BufferState(residual)


def refresh(state: BufferState, net: Network, rates: Mapping[Edge, int]) -> BufferState:
    """Regenerate keys, clamping each buffer at its nominal capacity."""
    return BufferState(
        {e: min(net.capacity[e], state.residual[e] + rates.get(e, 0)) for e in net.edges}
    )


@dataclass(frozen=True)
class SimulationResult:
    decisions: tuple[Path, ...]
    served_count: int
    rejected_count: int
    final_state: BufferState


def simulate(
    net: Network,
    trace: Trace,
    strategy: Strategy | str,
    refresh_rates: Mapping[Edge, int] | None = None,
    refresh_period: int | None = None,
) -> SimulationResult:
    """Serve the trace in order, never withholding a feasible request."""
    trace.check_against(net)
    if (refresh_rates is None) != (refresh_period is None):
        raise InvalidInput("refresh_rates and refresh_period must be given together")
    if refresh_period is not None and refresh_period < 1:
        raise InvalidInput(f"refresh_period must be positive, got {refresh_period}")
    route = ROUTERS[Strategy(strategy)]
    state = BufferState.nominal(net)
    decisions: list[Path] = []
    for k, r in enumerate(trace.requests, start=1):
        path = route(net, state, r)
        if path:
            state = serve(state, r, path)
        decisions.append(path)
        if refresh_period is not None and k % refresh_period == 0:
            state = refresh(state, net, refresh_rates)
    served = sum(1 for p in decisions if p)
    return SimulationResult(tuple(decisions), served, len(decisions) - served, state)


def replay(net: Network, trace: Trace, assignment: Sequence[Path]) -> BufferState:
    """Serve a fixed per-request assignment (empty path = skip) from nominal buffers."""
    state = BufferState.nominal(net)
    for r, path in zip(trace.requests, assignment, strict=True):
        if path:
            state = serve(state, r, path)
    return state
