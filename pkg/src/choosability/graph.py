"""Finite simple undirected graphs with dense integer vertex ids.

Vertices are 0..n-1.  Adjacency is kept both as sorted neighbor tuples and
as per-vertex bitmasks; the bitmasks make the repeated disjointness and
chord tests in handle detection cheap.  Graphs are immutable after
construction and safe to share.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .errors import InputError


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]          # deduplicated, u < v, sorted
    adj: tuple[tuple[int, ...], ...] = field(compare=False)
    masks: tuple[int, ...] = field(compare=False)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    @property
    def vertices(self) -> range:
        return range(self.n)


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph on vertices 0..n-1 from an iterable of endpoint pairs.

    Duplicate edges are dropped; self-loops and out-of-range endpoints are
    rejected.
    """
    if n < 0:
        raise InputError(f"vertex count must be nonnegative, got {n}")
    dedup = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise InputError(f"self-loop at vertex {u}")
        dedup.add((u, v) if u < v else (v, u))
    masks = [0] * n
    for u, v in dedup:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    adj = tuple(tuple(_bits(m)) for m in masks)
    return Graph(n=n, edges=tuple(sorted(dedup)), adj=adj, masks=tuple(masks))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on `keep`, plus the old-id -> new-id bijection.

    New ids follow ascending order of the kept old ids, so traces expressed
    in original ids can always be translated back.
    """
    kept = sorted(set(keep))
    for v in kept:
        if not (0 <= v < g.n):
            raise InputError(f"vertex {v} outside 0..{g.n - 1}")
    mapping = {old: new for new, old in enumerate(kept)}
    edges = [(mapping[u], mapping[v]) for u, v in g.edges if u in mapping and v in mapping]
    return build_graph(len(kept), edges), mapping


def degree(g: Graph, v: int) -> int:
    if not (0 <= v < g.n):
        raise InputError(f"vertex {v} outside 0..{g.n - 1}")
    return g.degree(v)


def is_triangle_free(g: Graph) -> bool:
    return all(g.masks[u] & g.masks[v] == 0 for u, v in g.edges)


def girth(g: Graph) -> int | float:
    """Length of a shortest cycle, or math.inf for forests.

    One BFS per start vertex; a non-tree edge seen at depths d(u), d(w)
    closes a cycle of length d(u)+d(w)+1, and minimizing over all start
    vertices is exact because some start vertex lies on a shortest cycle.
    """
    best = math.inf
    for root in g.vertices:
        dist = {root: 0}
        parent = {root: -1}
        queue = [root]
        while queue:
            nxt = []
            for u in queue:
                for w in g.adj[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        nxt.append(w)
                    elif w != parent[u]:
                        best = min(best, dist[u] + dist[w] + 1)
            queue = nxt
    return best


def path_graph(k: int) -> Graph:
    """Path on k vertices (length k-1)."""
    return build_graph(k, [(i, i + 1) for i in range(k - 1)])


def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise InputError("cycle needs at least 3 vertices")
    return build_graph(k, [(i, (i + 1) % k) for i in range(k)])


def star_graph(leaves: int) -> Graph:
    """Star with center 0 and the given number of leaves."""
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def theta_graph(lengths: tuple[int, int, int]) -> Graph:
    """Two hub vertices joined by three internally disjoint paths."""
    edges = []
    n = 2
    for length in lengths:
        if length < 1:
            raise InputError("theta arc length must be >= 1")
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, n))
            prev = n
            n += 1
        edges.append((prev, 1))
    return build_graph(n, edges)
