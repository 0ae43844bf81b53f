"""List multicoloring of weighted paths.

A path instance has vertices 0..n (length n), per-vertex color lists and
demands.  The central structural notion is a *waterfall* list: vertices at
distance >= 2 have disjoint lists, so each color lives on at most two
consecutive vertices.  For waterfall lists feasibility is exactly an
interval Hall condition: every window i..j must offer at least as many
distinct colors as it demands (`waterfall_feasible`).  A list is *good* if
each interior list can pay for both incident demands; good lists can be
rewritten into waterfall form of the same sizes without changing
feasibility (`waterfall_similar`), which is what the constructive solvers
ride on.

`solve_path` is the independent exact oracle (a reachability DP over chosen
sets) against which the structural criterion and the constructions are
tested.

Two constructive solvers are exposed:

* `solve_narrow_ends` handles lists shaped [b, a, ..., a, b] with
  a = 2b+e; such instances are always solvable once the length reaches
  Even(2b/e), the smallest even integer at least 2b/e.
* `solve_tail_reduced` handles the variant [b, a, ..., a, b+e, b+e] whose
  last two lists jointly offer at least 2b colors; it peels b-e colors
  private to the last list, solves the reduced good instance, and adds the
  peeled colors back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InputError, InvariantViolationError, PreconditionError

ColorSet = frozenset[int]


@dataclass(frozen=True)
class PathInstance:
    lists: tuple[ColorSet, ...]
    weights: tuple[int, ...]

    def __post_init__(self):
        if len(self.lists) != len(self.weights):
            raise InputError("lists and weights must have the same length")
        if len(self.lists) == 0:
            raise InputError("path instance needs at least one vertex")
        if any(w < 0 for w in self.weights):
            raise InputError("weights must be nonnegative")

    @property
    def n(self) -> int:
        """Path length (number of edges); vertices are 0..n."""
        return len(self.lists) - 1


def path_instance(lists: Iterable[Iterable[int]], weights: Iterable[int]) -> PathInstance:
    return PathInstance(tuple(frozenset(l) for l in lists), tuple(weights))


@dataclass(frozen=True)
class Amplitude:
    i: int
    j: int
    value: ColorSet

    @property
    def size(self) -> int:
        return len(self.value)


def even_ceil(q) -> int | float:
    """Smallest even integer >= q; infinity passes through.

    Exact rational arithmetic throughout: a float here could move a handle
    length threshold by one and silently change every core.
    """
    if q == math.inf:
        return math.inf
    q = Fraction(q)
    p = math.ceil(q)
    return p if p % 2 == 0 else p + 1


def handle_length_threshold(x: Fraction) -> int | float:
    """Even(2 / frac(x)) — the minimum removable run length at parameter x.

    Infinite when x is an integer: no run is ever long enough.
    """
    x = Fraction(x)
    frac = x - math.floor(x)
    if frac == 0:
        return math.inf
    return even_ceil(Fraction(2) / frac)


def is_waterfall(p: PathInstance) -> bool:
    """True iff vertices at distance >= 2 have disjoint lists."""
    seen_before: set[int] = set()
    for i in range(2, p.n + 1):
        seen_before |= p.lists[i - 2]
        if p.lists[i] & seen_before:
            return False
    return True


def amplitude(p: PathInstance, i: int, j: int) -> Amplitude:
    """Union of the lists on the window i..j."""
    if not (0 <= i <= j <= p.n):
        raise InputError(f"window {i}..{j} outside 0..{p.n}")
    value: frozenset = frozenset()
    for k in range(i, j + 1):
        value |= p.lists[k]
    return Amplitude(i, j, value)


def is_good_list(p: PathInstance) -> bool:
    """Every interior list covers the demands of itself and its successor."""
    if p.n < 1:
        raise PreconditionError("good-list check needs a path of length >= 1")
    return all(len(p.lists[i]) >= p.weights[i] + p.weights[i + 1]
               for i in range(1, p.n))


def waterfall_feasible(p: PathInstance) -> bool:
    """Interval criterion for waterfall lists: every window offers at least
    as many colors as it demands.  Exact for waterfall instances only."""
    if not is_waterfall(p):
        raise PreconditionError("criterion only applies to waterfall lists")
    for i in range(p.n + 1):
        union: set[int] = set()
        demand = 0
        for j in range(i, p.n + 1):
            union |= p.lists[j]
            demand += p.weights[j]
            if len(union) < demand:
                return False
    return True


def solve_path(p: PathInstance) -> dict[int, ColorSet] | None:
    """Exact oracle: reachability DP over chosen sets along the path.

    States at vertex i are the w(i)-subsets of L(i); a state survives iff
    some state at i-1 is disjoint from it.  Parent pointers recover a
    witness.  Independent of all structural shortcuts by design.
    """
    for i in range(p.n + 1):
        if p.weights[i] > len(p.lists[i]):
            return None
    colors = sorted({c for l in p.lists for c in l})
    index = {c: i for i, c in enumerate(colors)}

    def subsets(i: int) -> list[int]:
        bits = sorted(index[c] for c in p.lists[i])
        out = []
        for combo in combinations(bits, p.weights[i]):
            m = 0
            for b in combo:
                m |= 1 << b
            out.append(m)
        return out

    states = [subsets(0)]
    parents: list[list[int]] = [[-1] * len(states[0])]
    for i in range(1, p.n + 1):
        layer = []
        parent = []
        for m in subsets(i):
            for k, prev in enumerate(states[i - 1]):
                if prev & m == 0:
                    layer.append(m)
                    parent.append(k)
                    break
        if not layer:
            return None
        states.append(layer)
        parents.append(parent)

    choice: dict[int, ColorSet] = {}
    k = 0
    for i in range(p.n, -1, -1):
        m = states[i][k]
        choice[i] = frozenset(colors[b] for b in range(len(colors)) if m >> b & 1)
        k = parents[i][k]
    return choice


def _waterfall_similar_with_maps(p: PathInstance) -> tuple[PathInstance, list[dict[int, int]]]:
    """Rewrite a good list into waterfall form of identical sizes.

    Scanning left to right, any color a vertex shares with some vertex two
    or more steps back is renamed to a fresh color, and the rename is
    propagated to every later occurrence so consecutive intersections keep
    their shape.  Also returns, per position, the map from final colors
    back to the original ones.
    """
    if not is_good_list(p):
        raise PreconditionError("waterfall rewrite requires a good list")
    lists = [set(l) for l in p.lists]
    maps: list[dict[int, int]] = [{c: c for c in l} for l in lists]
    fresh = max((c for l in lists for c in l), default=0) + 1
    behind: set[int] = set()
    for i in range(1, p.n + 1):
        behind |= lists[i - 2] if i >= 2 else set()
        for c in sorted(lists[i] & behind):
            replacement = fresh
            fresh += 1
            for k in range(i, p.n + 1):
                if c in lists[k]:
                    lists[k].remove(c)
                    lists[k].add(replacement)
                    maps[k][replacement] = maps[k].pop(c)
    out = PathInstance(tuple(frozenset(l) for l in lists), p.weights)
    if not is_waterfall(out):
        raise InvariantViolationError("waterfall rewrite produced a non-waterfall list")
    return out, maps


def waterfall_similar(p: PathInstance) -> PathInstance:
    """Waterfall list with the same sizes and the same feasibility verdict."""
    return _waterfall_similar_with_maps(p)[0]


def prefix_amplitudes_ok(p: PathInstance) -> bool:
    """Prefix-only form of the interval criterion.

    For good waterfall lists whose final list covers its own demand, the
    prefix windows 0..j alone already decide feasibility.
    """
    union: set[int] = set()
    demand = 0
    for j in range(p.n + 1):
        union |= p.lists[j]
        demand += p.weights[j]
        if len(union) < demand:
            return False
    return True


def _solve_good_suffix_slack(p: PathInstance) -> dict[int, ColorSet]:
    """Solve a good instance whose last list covers its own demand.

    Route: waterfall rewrite, prefix criterion, a left-to-right greedy that
    spends colors expiring at the current vertex before colors shared with
    the next one, then translation back through the per-position maps.
    Translation can collide where a shared color was split across
    consecutive vertices; the greedy de-prioritizes such colors, remaining
    collisions are repaired locally and, failing that, the exact oracle
    takes over.  The instance classes fed here are guaranteed solvable, so
    a None from the oracle is an internal error.
    """
    wf, maps = _waterfall_similar_with_maps(p)
    if not prefix_amplitudes_ok(wf):
        raise InvariantViolationError(
            "prefix amplitude criterion failed on an instance that must satisfy it")

    choice_wf: dict[int, ColorSet] = {}
    prev: ColorSet = frozenset()
    prev_orig: set[int] = set()
    failed = False
    for i in range(wf.n + 1):
        nxt = wf.lists[i + 1] if i < wf.n else frozenset()
        usable = wf.lists[i] - prev

        def key(c, i=i):
            return (1 if maps[i][c] in prev_orig else 0, c)

        expiring = sorted(usable - nxt, key=key)
        shared = sorted(usable & nxt, key=key)
        need = wf.weights[i]
        picked = expiring[:need]
        if len(picked) < need:
            picked += shared[:need - len(picked)]
        if len(picked) < need:
            failed = True
            break
        choice_wf[i] = frozenset(picked)
        prev_orig = {maps[i][c] for c in picked}
        prev = choice_wf[i]

    if not failed:
        out = _translate_back(p, maps, choice_wf)
        if out is not None:
            return out

    oracle = solve_path(p)
    if oracle is None:
        raise InvariantViolationError("instance believed solvable has no solution")
    return oracle


def _translate_back(p: PathInstance, maps: list[dict[int, int]],
                    choice_wf: dict[int, ColorSet]) -> dict[int, ColorSet] | None:
    """Map a waterfall solution back to original colors, repairing boundary
    collisions greedily; None when a repair has no room."""
    out: dict[int, ColorSet] = {}
    for i in range(p.n + 1):
        mapped = {maps[i][c] for c in choice_wf[i]}
        if i > 0:
            clash = mapped & out[i - 1]
            for color in sorted(clash):
                candidates = sorted(p.lists[i] - mapped - out[i - 1])
                if not candidates:
                    return None
                mapped.remove(color)
                mapped.add(candidates[0])
        if len(mapped) != p.weights[i]:
            return None
        out[i] = frozenset(mapped)
    return out


def solve_narrow_ends(p: PathInstance, params) -> dict[int, ColorSet]:
    """Solve instances shaped [b, a, ..., a, b] with a = 2b+e, demand b.

    Guaranteed solvable once n >= Even(2b/e); the preconditions enforce
    exactly that shape and length and a violation names the failed
    constraint.
    """
    b, e = params.b, params.e
    if e is None or e < 1:
        raise PreconditionError("slack e must be a positive integer (integral ratios never qualify)")
    a = 2 * b + e
    if params.a != a:
        raise PreconditionError(f"params inconsistent: a must equal 2b+e = {a}, got {params.a}")
    n = p.n
    threshold = even_ceil(Fraction(2 * b, e))
    if n < threshold:
        raise PreconditionError(f"path length {n} below Even(2b/e) = {threshold}")
    if len(p.lists[0]) != b or len(p.lists[n]) != b:
        raise PreconditionError(f"end lists must have size b = {b}")
    for i in range(1, n):
        if len(p.lists[i]) != a:
            raise PreconditionError(f"interior list {i} must have size a = {a}, got {len(p.lists[i])}")
    if any(w != b for w in p.weights):
        raise PreconditionError(f"all demands must equal b = {b}")
    return _solve_good_suffix_slack(p)


def is_tail_reduced(p: PathInstance, params) -> bool:
    """Shape test: [b, a, ..., a, b+e, b+e] and the last two lists jointly
    offer at least 2b colors."""
    if p.n < 2:
        raise PreconditionError("tail-reduced shape needs length >= 2")
    b, e = params.b, params.e
    if e is None:
        raise PreconditionError("params must carry the slack e")
    a = 2 * b + e
    n = p.n
    if len(p.lists[0]) != b:
        return False
    if any(len(p.lists[i]) != a for i in range(1, n - 1)):
        return False
    if len(p.lists[n - 1]) != b + e or len(p.lists[n]) != b + e:
        return False
    return len(p.lists[n - 1] | p.lists[n]) >= 2 * b


def solve_tail_reduced(p: PathInstance, params) -> dict[int, ColorSet]:
    """Solve a tail-reduced instance of length exactly Even(2b/e), demand b.

    The last list holds at least b-e colors missing from its predecessor;
    b-e of them (smallest first) are committed up front, the trimmed
    instance is good and solved constructively, and the committed colors
    are added back to the final chosen set.
    """
    b, e = params.b, params.e
    if e is None or e < 1:
        raise PreconditionError("slack e must be a positive integer (integral ratios never qualify)")
    n = p.n
    threshold = even_ceil(Fraction(2 * b, e))
    if n != threshold:
        raise PreconditionError(f"path length must be exactly Even(2b/e) = {threshold}, got {n}")
    if not is_tail_reduced(p, params):
        raise PreconditionError("lists do not have the tail-reduced shape (sizes or tail union)")
    if any(w != b for w in p.weights):
        raise PreconditionError(f"all demands must equal b = {b}")

    committed = tuple(sorted(p.lists[n] - p.lists[n - 1]))[:max(b - e, 0)]
    inner_lists = list(p.lists[:n]) + [p.lists[n] - frozenset(committed)]
    inner_weights = [b] * n + [b - len(committed)]
    inner = PathInstance(tuple(inner_lists), tuple(inner_weights))
    choice = _solve_good_suffix_slack(inner)
    choice[n] = choice[n] | frozenset(committed)
    return choice
