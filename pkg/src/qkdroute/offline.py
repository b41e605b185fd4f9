"""Offline optimum for request traces and exact competitive ratios.

Without key refresh, whether a set of requests can be served together
depends only on the total load each link carries, not on arrival order.
The optimum is therefore a maximum-cardinality subset of requests with a
free choice of simple path for each one.  The search sorts the trace so
identical requests are adjacent, makes identical requests take
non-decreasing choice indices (this removes permutation symmetry), and
memoizes on (position, residual buffers).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction

from qkdroute.errors import SearchBudgetExceeded
from qkdroute.network import EMPTY_PATH, Network, Path
from qkdroute.online import Strategy, Trace, replay, simulate
from qkdroute.paths import enumerate_paths

DEFAULT_STATE_BUDGET = 10_000_000


@dataclass(frozen=True)
class RatioReport:
    algorithm_served: int
    opt_served: int
    ratio: Fraction
    opt_assignment: tuple[Path, ...]


def optimal_served(
    net: Network, trace: Trace, state_budget: int = DEFAULT_STATE_BUDGET
) -> tuple[int, tuple[Path, ...]]:
    """Largest number of trace requests servable at once, with an assignment."""
    trace.check_against(net)
    requests = trace.requests
    if not requests:
        return 0, ()

    edge_index = {e: j for j, e in enumerate(net.edges)}
    hop_limit = max(len(net.nodes) - 1, 1)
    candidates: dict[tuple[str, str, int], list[tuple[Path, tuple[int, ...]]]] = {}
    for r in requests:
        key = (r.source, r.dest, r.bits)
        if key not in candidates:
            ps = enumerate_paths(net, r.source, r.dest, hop_limit)
            candidates[key] = [
                (p, tuple(edge_index[e] for e in p))
                for p in ps.paths
                if all(net.capacity[e] >= r.bits for e in p)
            ]

    keys_of = [(r.source, r.dest, r.bits) for r in requests]
    order = sorted(range(len(requests)), key=lambda k: (keys_of[k], k))
    keys = [keys_of[k] for k in order]
    same_as_prev = [pos > 0 and keys[pos] == keys[pos - 1] for pos in range(len(keys))]
    n = len(order)

    memo: dict[tuple, tuple[int, int]] = {}
    explored = 0

    def best(pos: int, residual: tuple[int, ...], floor: int) -> int:
        # floor: smallest admissible choice index (symmetry breaking)
        nonlocal explored
        if pos == n:
            return 0
        state = (pos, residual, floor)
        hit = memo.get(state)
        if hit is not None:
            return hit[0]
        explored += 1
        if explored > state_budget:
            raise SearchBudgetExceeded(f"offline search exceeded {state_budget} states")
        paths = candidates[keys[pos]]
        bits = keys[pos][2]
        reject = len(paths)
        nxt_same = pos + 1 < n and same_as_prev[pos + 1]
        top, top_choice = -1, reject
        for c in range(floor, len(paths)):
            idx = paths[c][1]
            if all(residual[j] >= bits for j in idx):
                res = list(residual)
                for j in idx:
                    res[j] -= bits
                value = 1 + best(pos + 1, tuple(res), c if nxt_same else 0)
                if value > top:
                    top, top_choice = value, c
                    if value == n - pos:
                        break
        if top < n - pos:
            value = best(pos + 1, residual, reject if nxt_same else 0)
            if value > top:
                top, top_choice = value, reject
        memo[state] = (top, top_choice)
        return top

    start = tuple(net.capacity[e] for e in net.edges)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * n + 100))
    try:
        count = best(0, start, 0)
    finally:
        sys.setrecursionlimit(limit)

    assignment: list[Path] = [EMPTY_PATH] * n
    residual, floor = start, 0
    for pos in range(n):
        choice = memo[(pos, residual, floor)][1]
        nxt_same = pos + 1 < n and same_as_prev[pos + 1]
        paths = candidates[keys[pos]]
        if choice < len(paths):
            path, idx = paths[choice]
            assignment[order[pos]] = path
            res = list(residual)
            for j in idx:
                res[j] -= keys[pos][2]
            residual = tuple(res)
        floor = choice if nxt_same else 0
    return count, tuple(assignment)


def ratio_of(served: int, opt: int) -> Fraction:
    return Fraction(served, opt) if opt else Fraction(1)


def competitive_ratio(
    net: Network,
    trace: Trace,
    strategy: Strategy | str,
    state_budget: int = DEFAULT_STATE_BUDGET,
) -> RatioReport:
    result = simulate(net, trace, strategy)
    opt, assignment = optimal_served(net, trace, state_budget)
    replay(net, trace, assignment)  # raises if the assignment overdraws a link
    return RatioReport(result.served_count, opt, ratio_of(result.served_count, opt), assignment)
