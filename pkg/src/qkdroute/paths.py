"""Hop-bounded enumeration of simple paths in canonical order."""

from __future__ import annotations

from dataclasses import dataclass

from qkdroute.network import Edge, Network, Path

DEFAULT_MAX_HOPS = 3


def canonical_key(path: Path) -> tuple[int, Path]:
    """Sort key: shorter paths first, then lexicographic by edge sequence."""
    return len(path), path


@dataclass(frozen=True)
class PathSet:
    source: str
    dest: str
    max_hops: int
    paths: tuple[Path, ...]

    def __len__(self) -> int:
        return len(self.paths)

    def __getitem__(self, m: int) -> Path:
        return self.paths[m]


def enumerate_paths(
    net: Network, source: str, dest: str, max_hops: int = DEFAULT_MAX_HOPS
) -> PathSet:
    """All simple valid ``source -> dest`` paths with at most ``max_hops`` edges.

    Depth-first search with on-path node marking; the result is sorted by
    :func:`canonical_key`, so it does not depend on the input edge order.
    """
    if source == dest:
        raise ValueError(f"source and destination are both {source!r}")
    for node in (source, dest):
        if not net.has_node(node):
            raise ValueError(f"unknown node {node!r}")
    if max_hops < 1:
        raise ValueError(f"max_hops must be positive, got {max_hops}")

    found: list[Path] = []
    on_path = {source}
    stack: list[Edge] = []

    def dfs(u: str) -> None:
        if len(stack) == max_hops:
            return
        for v in net.successors[u]:
            if v in on_path:
                continue
            stack.append(Edge(u, v))
            if v == dest:
                found.append(tuple(stack))
            else:
                on_path.add(v)
                dfs(v)
                on_path.discard(v)
            stack.pop()

    dfs(source)
    found.sort(key=canonical_key)
    return PathSet(source, dest, max_hops, tuple(found))


def edge_indicator(ps: PathSet, m: int, edge: Edge) -> int:
    """1 if ``edge`` lies on the ``m``-th path of ``ps``, else 0."""
    if not 0 <= m < len(ps.paths):
        raise IndexError(f"path index {m} out of range for {len(ps.paths)} paths")
    return int(edge in ps.paths[m])
