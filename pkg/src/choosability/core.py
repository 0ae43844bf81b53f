"""Iterative core reduction and constructive lifting.

For a rational parameter x, the reduction repeatedly removes features that
provably cannot affect whether the graph admits b-sized choices from
a-sized lists whenever a/b >= x:

* vertices of degree at most floor(x) - 1;
* the interior of a *run*: a path whose interior vertices have degree at
  most floor(x) and carry no chords among themselves (a "plain handle"),
  once its length reaches T = Even(2/frac(x));
* the same at length T-1 when the far endpoint has degree at most
  floor(x)+1 and owns a spare low-degree neighbor (a "1-handle");
* at level 2, the symmetric variant relaxed at both ends at length T-2
  (a "2-handle");
* in the colorability variant (x in [2,3)), any plain handle admitting a
  second endpoint-to-endpoint path of the same length parity, no longer
  than itself ("parity handle").

The surviving graph is the extended core.  Each removal is recorded as a
ReductionStep with enough neighborhood data to run the argument backwards:
`lift_choosability` replays the trace in reverse, extending a valid choice
on the core to the whole graph by re-solving small residual path instances
with the exact path oracle.

Scan order is deterministic (ascending vertex ids, fixed feature priority)
so traces are reproducible; `order_independence_probe` re-runs the level-1
reduction under random removal orders and compares the resulting cores.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping

from .errors import (InputError, InvariantViolationError, PreconditionError,
                     ResidualInfeasibleError)
from .graph import Graph, induced_subgraph
from .paths import PathInstance, handle_length_threshold, solve_path

HANDLE_KINDS = ("plain", "one_handle", "two_handle", "parity")


@dataclass(frozen=True)
class HandleDescriptor:
    """A removable run: the path v_0..v_n plus kind-specific attachments.

    `before`/`after` are the spare low-degree neighbors of v_0/v_n used by
    the relaxed kinds; `witness` is the alternate same-parity path of a
    parity handle.  All ids refer to the original graph.
    """

    kind: str
    path: tuple[int, ...]
    before: int | None = None
    after: int | None = None
    witness: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in HANDLE_KINDS:
            raise InputError(f"unknown handle kind {self.kind!r}")
        if len(self.path) < 2 or len(set(self.path)) != len(self.path):
            raise InputError("handle path must be a sequence of distinct vertices")

    @property
    def length(self) -> int:
        return len(self.path) - 1

    @property
    def interior(self) -> tuple[int, ...]:
        return self.path[1:-1]


@dataclass(frozen=True)
class ReductionStep:
    """One removal: either a low-degree vertex or a handle interior.

    `residual` snapshots, for every vertex the lift will recolor, its
    neighbors alive at removal time with the path predecessor/successor
    already dropped — exactly the sets whose chosen colors get subtracted
    when the step is lifted.
    """

    kind: str                      # "vertex" | "handle"
    vertex: int | None = None
    handle: HandleDescriptor | None = None
    residual: Mapping[int, tuple[int, ...]] = field(default_factory=dict)

    @property
    def removed(self) -> tuple[int, ...]:
        if self.kind == "vertex":
            return (self.vertex,)
        return self.handle.interior


@dataclass(frozen=True)
class ReductionTrace:
    x: Fraction
    level: int
    variant: str
    steps: tuple[ReductionStep, ...]
    core: tuple[int, ...]


class _Alive:
    """Mutable view of a graph restricted to its surviving vertices."""

    def __init__(self, g: Graph, alive=None):
        self.g = g
        self.alive = set(g.vertices) if alive is None else set(alive)
        self.mask = 0
        for v in self.alive:
            self.mask |= 1 << v

    def degree(self, v: int) -> int:
        return (self.g.masks[v] & self.mask).bit_count()

    def neighbors(self, v: int) -> list[int]:
        return [w for w in self.g.adj[v] if self.mask >> w & 1]

    def adjacent(self, u: int, v: int) -> bool:
        return self.g.has_edge(u, v)

    def remove(self, vertices) -> None:
        for v in vertices:
            if not self.mask >> v & 1:
                raise InputError(f"vertex {v} removed twice")
            self.alive.discard(v)
            self.mask &= ~(1 << v)

    def sorted_vertices(self) -> list[int]:
        return sorted(self.alive)


def _floor_x(x: Fraction) -> int:
    return math.floor(Fraction(x))


def _iter_run_paths(av: _Alive, start: int, length: int, fx: int,
                    v0_relaxed: bool = False, vn_relaxed: bool = False,
                    v0_chordless: bool = False, vn_chordless: bool = False) -> Iterator[tuple[int, ...]]:
    """All paths of the given length from `start` whose interior vertices
    have degree <= fx and carry no chords among the chord-checked range.

    The endpoint flags widen the checks for the relaxed handle kinds:
    *_relaxed caps the endpoint degree at fx+1, *_chordless pulls the
    endpoint into the no-chord range.
    """
    if v0_relaxed and av.degree(start) > fx + 1:
        return
    path = [start]

    def extend() -> Iterator[tuple[int, ...]]:
        k = len(path)
        last = path[-1]
        for w in sorted(av.neighbors(last)):
            if w in path:
                continue
            if k < length:  # interior position
                if av.degree(w) > fx:
                    continue
                if any(av.adjacent(w, path[j]) for j in range(1, k - 1)):
                    continue
                if v0_chordless and k >= 2 and av.adjacent(w, path[0]):
                    continue
            else:           # final position
                if vn_relaxed and av.degree(w) > fx + 1:
                    continue
                if vn_chordless:
                    if any(av.adjacent(w, path[j]) for j in range(1, k - 1)):
                        continue
                    if v0_chordless and av.adjacent(w, path[0]):
                        continue
            path.append(w)
            if k == length:
                yield tuple(path)
            else:
                yield from extend()
            path.pop()

    yield from extend()


def _find_plain(av: _Alive, fx: int, length: int) -> HandleDescriptor | None:
    for v0 in av.sorted_vertices():
        for path in _iter_run_paths(av, v0, length, fx):
            return HandleDescriptor("plain", path)
    return None


def _find_one_handle(av: _Alive, fx: int, length: int) -> HandleDescriptor | None:
    for v0 in av.sorted_vertices():
        for path in _iter_run_paths(av, v0, length, fx, vn_relaxed=True, vn_chordless=True):
            vn = path[-1]
            for after in sorted(av.neighbors(vn)):
                if after in path or av.degree(after) > fx:
                    continue
                if any(av.adjacent(after, path[j]) for j in range(1, length)):
                    continue
                return HandleDescriptor("one_handle", path, after=after)
    return None


def _find_two_handle(av: _Alive, fx: int, length: int) -> HandleDescriptor | None:
    for v0 in av.sorted_vertices():
        for path in _iter_run_paths(av, v0, length, fx,
                                    v0_relaxed=True, vn_relaxed=True,
                                    v0_chordless=True, vn_chordless=True):
            vn = path[-1]
            for after in sorted(av.neighbors(vn)):
                if after in path or av.degree(after) > fx:
                    continue
                if any(av.adjacent(after, path[j]) for j in range(0, length)):
                    continue
                for before in sorted(av.neighbors(path[0])):
                    if before in path or before == after or av.degree(before) > fx:
                        continue
                    if av.adjacent(before, after):
                        continue
                    if any(av.adjacent(before, path[j]) for j in range(1, length + 1)):
                        continue
                    return HandleDescriptor("two_handle", path, before=before, after=after)
    return None


def parity_witness_search(av: _Alive, path: tuple[int, ...]) -> tuple[int, ...] | None:
    """Alternate endpoint-to-endpoint path of the same length parity, no
    longer than the run, avoiding the run's interior.

    The interior is excluded because it is exactly what the removal takes
    away; a witness through it would not survive.
    """
    v0, vn = path[0], path[-1]
    n = len(path) - 1
    banned = set(path[1:-1])
    walk = [v0]

    def dfs() -> tuple[int, ...] | None:
        m = len(walk) - 1
        last = walk[-1]
        if last == vn and m >= 1 and m % 2 == n % 2:
            return tuple(walk)
        if m == n:
            return None
        for w in sorted(av.neighbors(last)):
            if w in walk or w in banned:
                continue
            walk.append(w)
            found = dfs()
            if found:
                return found
            walk.pop()
        return None

    return dfs()


def _find_parity(av: _Alive, fx: int, max_length: int) -> HandleDescriptor | None:
    for v0 in av.sorted_vertices():
        for length in range(2, max_length + 1):
            for path in _iter_run_paths(av, v0, length, fx):
                witness = parity_witness_search(av, path)
                if witness is not None:
                    return HandleDescriptor("parity", path, witness=witness)
    return None


def _recolored_positions(h: HandleDescriptor) -> list[int]:
    """Extended path of a handle plus which positions the lift recolors.

    Plain and parity runs keep both endpoint choices; a 1-handle recolors
    its far endpoint and the spare neighbor; a 2-handle recolors all of it.
    """
    if h.kind in ("plain", "parity"):
        return list(range(1, h.length))
    if h.kind == "one_handle":
        return list(range(1, h.length + 2))
    return list(range(0, h.length + 3))


def _extended_path(h: HandleDescriptor) -> list[int]:
    if h.kind in ("plain", "parity"):
        return list(h.path)
    if h.kind == "one_handle":
        return list(h.path) + [h.after]
    return [h.before] + list(h.path) + [h.after]


def _make_step(av: _Alive, feature) -> ReductionStep:
    """Wrap a found feature with its residual-neighborhood snapshot."""
    if isinstance(feature, int):
        return ReductionStep("vertex", vertex=feature,
                             residual={feature: tuple(av.neighbors(feature))})
    ext = _extended_path(feature)
    residual = {}
    for pos in _recolored_positions(feature):
        v = ext[pos]
        drop = {ext[pos - 1] if pos > 0 else None, ext[pos + 1] if pos < len(ext) - 1 else None}
        residual[v] = tuple(w for w in av.neighbors(v) if w not in drop)
    return ReductionStep("handle", handle=feature, residual=residual)


def _validate_params(x: Fraction, level: int, variant: str) -> Fraction:
    x = Fraction(x)
    if level not in (1, 2):
        raise InputError(f"level must be 1 or 2, got {level}")
    if variant not in ("ch", "co"):
        raise InputError(f"variant must be 'ch' or 'co', got {variant!r}")
    if variant == "co" and not (2 <= x < 3):
        raise InputError("parity removals are only defined for x in [2,3)")
    return x


def find_removable(g: Graph, x: Fraction, level: int = 1, variant: str = "ch",
                   alive=None) -> ReductionStep | None:
    """First removable feature under the fixed priority, or None on a core.

    Priority: low-degree vertex, plain run of length T, 1-handle of length
    T-1, (level 2) 2-handle of length T-2, (variant co) parity run.  Any
    run of length above T contains one of length exactly T, so the exact
    length search loses nothing.
    """
    x = _validate_params(x, level, variant)
    av = _Alive(g, alive)
    return _find_removable(av, x, level, variant)


def _find_removable(av: _Alive, x: Fraction, level: int, variant: str) -> ReductionStep | None:
    fx = _floor_x(x)
    for v in av.sorted_vertices():
        if av.degree(v) <= fx - 1:
            return _make_step(av, v)
    threshold = handle_length_threshold(x)
    if threshold != math.inf:
        t = int(threshold)
        found = _find_plain(av, fx, t)
        if found:
            return _make_step(av, found)
        found = _find_one_handle(av, fx, t - 1)
        if found:
            return _make_step(av, found)
        if level == 2:
            found = _find_two_handle(av, fx, t - 2)
            if found:
                return _make_step(av, found)
    if variant == "co":
        max_len = int(threshold) - 1 if threshold != math.inf else max(len(av.alive) - 1, 0)
        found = _find_parity(av, fx, max_len)
        if found:
            return _make_step(av, found)
    return None


def compute_core(g: Graph, x: Fraction, level: int = 1,
                 variant: str = "ch") -> tuple[Graph, ReductionTrace]:
    """Iterate find_removable to a fixed point.

    Returns the core as its own graph (ids remapped in ascending order of
    the surviving original ids) and the replayable trace in original ids.
    """
    x = _validate_params(x, level, variant)
    av = _Alive(g)
    steps = []
    while True:
        step = _find_removable(av, x, level, variant)
        if step is None:
            break
        steps.append(step)
        av.remove(step.removed)
    core_ids = av.sorted_vertices()
    core_graph, _ = induced_subgraph(g, core_ids)
    trace = ReductionTrace(x=x, level=level, variant=variant,
                           steps=tuple(steps), core=tuple(core_ids))
    return core_graph, trace


def _all_level1_candidates(av: _Alive, x: Fraction) -> list[ReductionStep]:
    fx = _floor_x(x)
    out = [_make_step(av, v) for v in av.sorted_vertices() if av.degree(v) <= fx - 1]
    threshold = handle_length_threshold(x)
    if threshold != math.inf:
        t = int(threshold)
        for v0 in av.sorted_vertices():
            for path in _iter_run_paths(av, v0, t, fx):
                out.append(_make_step(av, HandleDescriptor("plain", path)))
        for v0 in av.sorted_vertices():
            for path in _iter_run_paths(av, v0, t - 1, fx, vn_relaxed=True, vn_chordless=True):
                vn = path[-1]
                for after in sorted(av.neighbors(vn)):
                    if after in path or av.degree(after) > fx:
                        continue
                    if any(av.adjacent(after, path[j]) for j in range(1, t - 1)):
                        continue
                    out.append(_make_step(av, HandleDescriptor("one_handle", path, after=after)))
    return out


def order_independence_probe(g: Graph, x: Fraction, trials: int, seed: int) -> bool:
    """Re-run the level-1 reduction under random removal orders.

    True iff every randomized run ends on the same core vertex set as the
    deterministic one.  Only the level-1 choosability rules are covered;
    nothing is claimed for the other reduction flavors.
    """
    x = _validate_params(x, 1, "ch")
    _, trace = compute_core(g, x, 1, "ch")
    baseline = set(trace.core)
    for t in range(trials):
        rng = random.Random(seed + t)
        av = _Alive(g)
        while True:
            candidates = _all_level1_candidates(av, x)
            if not candidates:
                break
            step = rng.choice(candidates)
            av.remove(step.removed)
        if av.alive != baseline:
            return False
    return True


def parity_handle_witness(g: Graph, h: HandleDescriptor,
                          alive=None) -> tuple[int, ...] | None:
    """Witness path making a plain run a parity handle, if one exists."""
    if h.kind != "plain":
        raise PreconditionError("witness search expects a plain run")
    return parity_witness_search(_Alive(g, alive), h.path)


def _check_handle(av: _Alive, trace: ReductionTrace, h: HandleDescriptor) -> None:
    fx = _floor_x(trace.x)
    path = h.path
    for v in _extended_path(h):
        if v is None or not av.mask >> v & 1:
            raise InputError(f"handle vertex {v} not alive at its step")
    for a, b in zip(path, path[1:]):
        if not av.adjacent(a, b):
            raise InputError(f"handle path edge ({a},{b}) missing")
    for v in h.interior:
        if av.degree(v) > fx:
            raise InputError(f"interior vertex {v} has degree {av.degree(v)} > {fx}")
    chord_range = list(range(1, h.length))
    if any(av.adjacent(path[i], path[j])
           for i in chord_range for j in chord_range if j - i >= 2):
        raise InputError("handle interior has a chord")

    threshold = handle_length_threshold(trace.x)
    if h.kind == "plain":
        if not (threshold != math.inf and h.length >= threshold):
            raise InputError(f"plain run of length {h.length} below threshold {threshold}")
    elif h.kind == "one_handle":
        if threshold == math.inf or h.length != int(threshold) - 1:
            raise InputError(f"1-handle must have length threshold-1, got {h.length}")
        vn, after = path[-1], h.after
        if av.degree(vn) > fx + 1 or after is None or av.degree(after) > fx:
            raise InputError("1-handle endpoint degree conditions violated")
        if not av.adjacent(vn, after) or after in path:
            raise InputError("1-handle spare neighbor invalid")
        if any(av.adjacent(vn, path[j]) for j in range(1, h.length - 1)):
            raise InputError("1-handle endpoint has a chord")
        if any(av.adjacent(after, path[j]) for j in range(1, h.length)):
            raise InputError("1-handle spare neighbor has a chord")
    elif h.kind == "two_handle":
        if trace.level != 2:
            raise InputError("2-handle step in a level-1 trace")
        if threshold == math.inf or h.length != int(threshold) - 2:
            raise InputError(f"2-handle must have length threshold-2, got {h.length}")
        v0, vn, before, after = path[0], path[-1], h.before, h.after
        if av.degree(v0) > fx + 1 or av.degree(vn) > fx + 1:
            raise InputError("2-handle endpoint degree conditions violated")
        if before is None or after is None or before == after:
            raise InputError("2-handle needs distinct spare neighbors")
        if av.degree(before) > fx or av.degree(after) > fx:
            raise InputError("2-handle spare neighbor degree conditions violated")
        ext = _extended_path(h)
        if any(av.adjacent(ext[i], ext[j])
               for i in range(len(ext)) for j in range(len(ext)) if j - i >= 2):
            raise InputError("2-handle has a chord")
        for a, b in zip(ext, ext[1:]):
            if not av.adjacent(a, b):
                raise InputError("2-handle extended path edge missing")
    elif h.kind == "parity":
        if trace.variant != "co":
            raise InputError("parity step in a choosability trace")
        witness = h.witness
        if witness is None:
            witness = parity_witness_search(av, path)
            if witness is None:
                raise InputError("parity run has no alternate path")
        else:
            m = len(witness) - 1
            if witness[0] != path[0] or witness[-1] != path[-1]:
                raise InputError("parity witness endpoints do not match")
            if m > h.length or m % 2 != h.length % 2 or m < 1:
                raise InputError("parity witness has the wrong length or parity")
            if len(set(witness)) != len(witness) or set(witness) & set(h.interior):
                raise InputError("parity witness reuses removed vertices")
            for a, b in zip(witness, witness[1:]):
                if not (av.adjacent(a, b) and av.mask >> a & 1 and av.mask >> b & 1):
                    raise InputError("parity witness edge missing")


def replay_trace(g: Graph, trace: ReductionTrace) -> list[frozenset[int]]:
    """Re-validate every step against the shrinking graph.

    Returns the alive vertex set just before each step; raises InputError
    when the trace does not match the graph (wrong degrees, missing edges,
    chords, stale snapshots, or a different surviving core).
    """
    _validate_params(trace.x, trace.level, trace.variant)
    av = _Alive(g)
    fx = _floor_x(trace.x)
    before_sets = []
    for step in trace.steps:
        if step.kind == "vertex":
            v = step.vertex
            if v is None or not (0 <= v < g.n) or not av.mask >> v & 1:
                raise InputError(f"vertex step removes a dead or unknown vertex {v}")
            if av.degree(v) > fx - 1:
                raise InputError(f"vertex {v} has degree {av.degree(v)}, too high to remove")
        elif step.kind == "handle":
            _check_handle(av, trace, step.handle)
        else:
            raise InputError(f"unknown step kind {step.kind!r}")
        if step.residual:
            for v, snap in step.residual.items():
                ext = [step.vertex] if step.kind == "vertex" else _extended_path(step.handle)
                pos = ext.index(v)
                drop = {ext[pos - 1] if pos > 0 else None,
                        ext[pos + 1] if pos < len(ext) - 1 else None}
                expect = tuple(w for w in av.neighbors(v) if w not in drop)
                if tuple(snap) != expect:
                    raise InputError(f"stale residual snapshot for vertex {v}")
        before_sets.append(frozenset(av.alive))
        av.remove(step.removed)
    if av.sorted_vertices() != sorted(trace.core):
        raise InputError("trace core does not match the surviving vertices")
    return before_sets


def _rebuild_residual(g: Graph, step: ReductionStep,
                      alive_before: frozenset[int]) -> dict[int, tuple[int, ...]]:
    """Residual neighbor sets recomputed from the replayed alive set, for
    traces that carry no snapshots (the wire format drops them)."""
    if step.kind == "vertex":
        v = step.vertex
        return {v: tuple(w for w in g.adj[v] if w in alive_before)}
    ext = _extended_path(step.handle)
    out = {}
    for pos in _recolored_positions(step.handle):
        v = ext[pos]
        drop = {ext[pos - 1] if pos > 0 else None,
                ext[pos + 1] if pos < len(ext) - 1 else None}
        out[v] = tuple(w for w in g.adj[v] if w in alive_before and w not in drop)
    return out


def lift_choosability(g: Graph, trace: ReductionTrace, lists: Mapping[int, frozenset],
                      core_choice: Mapping[int, frozenset], b: int) -> dict[int, frozenset]:
    """Extend a valid b-choice on the core to all of g along the trace.

    Steps are processed in reverse.  A removed low-degree vertex takes the
    b smallest colors left in its list after subtracting all neighboring
    choices.  A removed run becomes a small path instance: endpoints keep
    their current choices where the argument pins them, every recolored
    vertex gets its list minus the choices of its off-path neighbors, and
    the exact path oracle fills it in.  Infeasibility of a residual
    instance raises ResidualInfeasibleError carrying the step; with list
    sizes a >= x*b and a matching trace it cannot happen for vertex, plain
    and 1-handle steps, and is not expected for the rest.
    """
    from .listcolor import choice_violations  # deferred: module cycle

    for v in g.vertices:
        if v not in lists:
            raise InputError(f"no list for vertex {v}")
    before_sets = replay_trace(g, trace)

    core_graph, mapping = induced_subgraph(g, trace.core)
    core_lists = {mapping[v]: frozenset(lists[v]) for v in trace.core}
    mapped_choice = {}
    for v in trace.core:
        if v not in core_choice:
            raise PreconditionError(f"core choice missing vertex {v}")
        mapped_choice[mapping[v]] = frozenset(core_choice[v])
    bad = choice_violations(core_graph, core_lists, {u: b for u in core_graph.vertices},
                            mapped_choice)
    if bad:
        raise PreconditionError("core choice invalid on the core: " + "; ".join(bad))

    choice: dict[int, frozenset] = {v: frozenset(core_choice[v]) for v in trace.core}

    for step, alive_before in zip(reversed(trace.steps), reversed(before_sets)):
        residual_sets = step.residual or _rebuild_residual(g, step, alive_before)
        if step.kind == "vertex":
            v = step.vertex
            residual = frozenset(lists[v])
            for w in residual_sets[v]:
                residual -= choice[w]
            if len(residual) < b:
                raise ResidualInfeasibleError(
                    f"vertex {v}: {len(residual)} colors left, need {b}", step)
            choice[v] = frozenset(sorted(residual)[:b])
            continue

        h = step.handle
        ext = _extended_path(h)
        recolor = _recolored_positions(h)
        inst_lists = []
        for pos, v in enumerate(ext):
            if pos in recolor:
                residual = frozenset(lists[v])
                for w in residual_sets[v]:
                    residual -= choice[w]
                inst_lists.append(residual)
            else:
                inst_lists.append(choice[v])
        instance = PathInstance(tuple(inst_lists), tuple(b for _ in ext))
        solved = solve_path(instance)
        if solved is None:
            raise ResidualInfeasibleError(
                f"{h.kind} at {h.path}: residual path instance unsolvable", step)
        for pos in recolor:
            choice[ext[pos]] = solved[pos]

    bad = choice_violations(g, {v: frozenset(lists[v]) for v in g.vertices},
                            {v: b for v in g.vertices}, choice)
    if bad:
        raise InvariantViolationError("lifted assignment invalid: " + "; ".join(bad))
    return choice
