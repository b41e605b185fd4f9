"""Brute-force reference implementations used only by the tests."""

from itertools import permutations, product

from qkdroute.network import Edge
from qkdroute.paths import canonical_key


def all_simple_paths(net, s, d, max_hops=None):
    inner = [v for v in net.nodes if v not in (s, d)]
    limit = len(inner) + 1 if max_hops is None else max_hops
    out = []
    for k in range(0, min(limit, len(inner) + 1)):
        for mids in permutations(inner, k):
            seq = (s, *mids, d)
            path = tuple(Edge(a, b) for a, b in zip(seq, seq[1:]))
            if all(net.has_edge(e) for e in path):
                out.append(path)
    return sorted(out, key=canonical_key)


def sap_oracle(net, residual, r):
    ok = [p for p in all_simple_paths(net, r.source, r.dest) if all(residual[e] >= r.bits for e in p)]
    return min(ok, key=canonical_key) if ok else ()


def wsp_oracle(net, residual, r):
    ok = [p for p in all_simple_paths(net, r.source, r.dest) if all(residual[e] >= r.bits for e in p)]
    if not ok:
        return ()
    return min(ok, key=lambda p: (-min(residual[e] for e in p), canonical_key(p)))


def opt_oracle(net, trace):
    """Maximum servable count by trying every reject/path choice per request."""
    options = [[()] + all_simple_paths(net, r.source, r.dest) for r in trace.requests]
    best = 0
    for combo in product(*options):
        load = {}
        for r, p in zip(trace.requests, combo):
            for e in p:
                load[e] = load.get(e, 0) + r.bits
        if all(v <= net.capacity[e] for e, v in load.items()):
            best = max(best, sum(1 for p in combo if p))
    return best
