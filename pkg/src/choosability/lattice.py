"""Triangular-lattice regions in axial coordinates.

A vertex (x, y) has up to six neighbors: left (x-1,y), right (x+1,y),
top-left (x-1,y+1), top-right (x,y+1), bottom-left (x,y-1) and
bottom-right (x+1,y-1).  Consecutive directions around a vertex are
mutually adjacent, so in a triangle-free region the occupied directions of
any vertex form an independent set in a 6-cycle: degree is at most 3, and
a degree-3 vertex (a *node*) is either *left* (neighbors left, top-right,
bottom-right) or *right* (neighbors right, top-left, bottom-left).

The *cutting node* is the topmost node row's rightmost left node; the
*cutting handle* is the degree-2 run leaving it through its top-right
neighbor and ending at the next node.  `mirror_region` reflects via
(x, y) -> (-x-y, y), which preserves adjacency and swaps node chirality,
covering regions whose topmost nodes are all right nodes.

`generate_region` builds seeded corpora (random walks, hexagonal patches,
parallelograms) with an optional deterministic triangle-free repair.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable

from .core import HandleDescriptor
from .errors import InputError, InvariantViolationError
from .graph import Graph, build_graph, is_triangle_free

Coord = tuple[int, int]

# fixed order: left, right, top-left, top-right, bottom-left, bottom-right
_OFFSETS = ((-1, 0), (1, 0), (-1, 1), (0, 1), (0, -1), (1, -1))
LEFT, RIGHT, TOP_LEFT, TOP_RIGHT, BOTTOM_LEFT, BOTTOM_RIGHT = range(6)


def lattice_neighbors(c: Coord) -> tuple[Coord, ...]:
    x, y = c
    return tuple((x + dx, y + dy) for dx, dy in _OFFSETS)


@dataclass(frozen=True)
class LatticeRegion:
    coords: tuple[Coord, ...]                  # sorted, defines vertex ids
    graph: Graph = field(compare=False)
    index: dict[Coord, int] = field(compare=False)

    @property
    def n(self) -> int:
        return self.graph.n

    def coord_of(self, v: int) -> Coord:
        return self.coords[v]


def build_region(coords: Iterable[Coord]) -> LatticeRegion:
    """Induced subgraph of the lattice on the given coordinates.

    Vertex ids follow sorted coordinate order, so regions rebuilt from the
    same coordinate set are identical.
    """
    cs = tuple(sorted(set((int(x), int(y)) for x, y in coords)))
    index = {c: i for i, c in enumerate(cs)}
    edges = []
    for c in cs:
        for nb in lattice_neighbors(c):
            if nb in index and index[nb] > index[c]:
                edges.append((index[c], index[nb]))
    return LatticeRegion(coords=cs, graph=build_graph(len(cs), edges), index=index)


def _vertex_id(r: LatticeRegion, v) -> int:
    if isinstance(v, tuple):
        if v not in r.index:
            raise InputError(f"coordinate {v} not in region")
        return r.index[v]
    if not (0 <= v < r.n):
        raise InputError(f"vertex {v} outside region")
    return v


_LEFT_PATTERN = frozenset({LEFT, TOP_RIGHT, BOTTOM_RIGHT})
_RIGHT_PATTERN = frozenset({RIGHT, TOP_LEFT, BOTTOM_LEFT})


def classify_node(r: LatticeRegion, v) -> str:
    """'left' / 'right' for degree-3 vertices, 'not_a_node' otherwise.

    Any other degree-3 direction pattern cannot occur in a triangle-free
    region, so it is reported as an invariant violation.
    """
    vid = _vertex_id(r, v)
    if r.graph.degree(vid) != 3:
        return "not_a_node"
    c = r.coord_of(vid)
    dirs = frozenset(d for d, nb in enumerate(lattice_neighbors(c)) if nb in r.index)
    if dirs == _LEFT_PATTERN:
        return "left"
    if dirs == _RIGHT_PATTERN:
        return "right"
    raise InvariantViolationError(
        f"degree-3 vertex {c} has direction pattern {sorted(dirs)}, "
        "impossible in a triangle-free region")


def cutting_node(r: LatticeRegion) -> int | None:
    """Rightmost left node in the topmost node row; None when that row has
    no left node (callers then mirror the region)."""
    nodes = [v for v in r.graph.vertices if r.graph.degree(v) == 3]
    if not nodes:
        return None
    top_y = max(r.coord_of(v)[1] for v in nodes)
    lefts = [v for v in nodes
             if r.coord_of(v)[1] == top_y and classify_node(r, v) == "left"]
    if not lefts:
        return None
    return max(lefts, key=lambda v: r.coord_of(v)[0])


def mirror_region(r: LatticeRegion) -> LatticeRegion:
    """Reflection (x, y) -> (-x-y, y): adjacency-preserving, swaps left and
    right nodes, and is an exact involution."""
    return build_region((-x - y, y) for x, y in r.coords)


def cutting_handle(r: LatticeRegion) -> HandleDescriptor | None:
    """Degree-2 run from the cutting node through its top-right neighbor to
    the next node; None when the walk cannot form one."""
    start = cutting_node(r)
    if start is None:
        return None
    x, y = r.coord_of(start)
    first = (x, y + 1)
    if first not in r.index or r.graph.degree(r.index[first]) != 2:
        return None  # the handle must leave through an internal top-right vertex
    path = [start, r.index[first]]
    while True:
        cur = path[-1]
        deg = r.graph.degree(cur)
        if deg == 3:
            return HandleDescriptor("plain", tuple(path))
        if deg != 2:
            return None  # dead end or an over-full vertex: not a handle
        nxt = [w for w in r.graph.neighbors(cur) if w != path[-2]]
        if nxt[0] in path:
            return None  # walked back onto itself: no distinct end node
        path.append(nxt[0])


def short_cutting_handle_ok(r: LatticeRegion) -> bool:
    """When the cutting handle has length <= 3 it must have length exactly
    3 and its far endpoint a spare neighbor of degree <= 2.

    Vacuously true without a cutting handle or with a longer one.
    """
    h = cutting_handle(r)
    if h is None or h.length > 3:
        return True
    if h.length != 3:
        return False
    v3, v2 = h.path[3], h.path[2]
    return any(w != v2 and r.graph.degree(w) <= 2 for w in r.graph.neighbors(v3))


def _hex_distance(c: Coord) -> int:
    x, y = c
    return (abs(x) + abs(y) + abs(x + y)) // 2


def _triangle_free_repair(coords: set[Coord]) -> set[Coord]:
    """Delete the smallest coordinate of the lexicographically first
    triangle until none remain; deterministic by construction."""
    coords = set(coords)
    while True:
        triangle = None
        for c in sorted(coords):
            for i, a in enumerate(lattice_neighbors(c)):
                if a not in coords or a < c:
                    continue
                for b_ in lattice_neighbors(c)[i + 1:]:
                    if b_ in coords and b_ > c and b_ in lattice_neighbors(a):
                        cand = tuple(sorted((c, a, b_)))
                        if triangle is None or cand < triangle:
                            triangle = cand
            if triangle is not None and triangle[0] == c:
                break
        if triangle is None:
            return coords
        coords.remove(triangle[0])


def generate_region(shape: str, size: int, seed: int,
                    triangle_free: bool = False) -> LatticeRegion:
    """Seeded region generator; identical arguments give identical regions.

    Shapes: 'random_walk' (visited coords of a size-step walk from the
    origin), 'hex_patch' (all coords within hex distance size) and
    'parallelogram' (the size-by-size coordinate box).
    """
    if size < 1:
        raise InputError("size must be >= 1")
    if shape == "random_walk":
        rng = random.Random(seed)
        cur = (0, 0)
        coords = {cur}
        for _ in range(size):
            cur = rng.choice(lattice_neighbors(cur))
            coords.add(cur)
    elif shape == "hex_patch":
        coords = {(x, y) for x in range(-size, size + 1)
                  for y in range(-size, size + 1) if _hex_distance((x, y)) <= size}
    elif shape == "parallelogram":
        coords = {(x, y) for x in range(size) for y in range(size)}
    else:
        raise InputError(f"unknown region shape {shape!r}")
    if triangle_free:
        coords = _triangle_free_repair(coords)
    return build_region(coords)


def write_region_file(r: LatticeRegion, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# lattice region: one 'x y' pair per line\n")
        for x, y in r.coords:
            fh.write(f"{x} {y}\n")


def read_region_file(path) -> LatticeRegion:
    coords = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            parts = body.split()
            if len(parts) != 2:
                raise InputError(f"{path}:{line_no}: expected 'x y', got {line.strip()!r}")
            try:
                coords.append((int(parts[0]), int(parts[1])))
            except ValueError as exc:
                raise InputError(f"{path}:{line_no}: non-integer coordinate") from exc
    return build_region(coords)


def region_coord_map(r: LatticeRegion) -> dict[int, Coord]:
    """Sidecar map vertex id -> coordinate for the graph JSON export."""
    return {v: r.coord_of(v) for v in r.graph.vertices}
