import random
from itertools import combinations, product

import pytest
from hypothesis import strategies as st

from choosability.graph import Graph, build_graph


def brute_force_solvable(g, lists, weights):
    """Independent oracle: try every combination of chosen subsets."""
    verts = list(g.vertices)
    options = []
    for v in verts:
        if weights.get(v, 0) > len(lists[v]):
            return False
        options.append([frozenset(c) for c in combinations(sorted(lists[v]), weights.get(v, 0))])
    for pick in product(*options):
        chosen = dict(zip(verts, pick))
        if all(not chosen[u] & chosen[v] for u, v in g.edges):
            return True
    return False


@st.composite
def small_graphs(draw, max_n=6):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = list(combinations(range(n), 2))
    edges = [p for p in pairs if draw(st.booleans())]
    return build_graph(n, edges)


@st.composite
def list_weight_instances(draw, max_n=5, max_colors=6, max_weight=2):
    g = draw(small_graphs(max_n=max_n))
    lists = {}
    weights = {}
    for v in g.vertices:
        size = draw(st.integers(min_value=0, max_value=4))
        lists[v] = frozenset(draw(st.permutations(range(max_colors)))[:size])
        weights[v] = draw(st.integers(min_value=0, max_value=min(max_weight, size)))
    return g, lists, weights


def random_lists(g, a, seed, universe=None):
    rng = random.Random(seed)
    universe = range(a * g.n if universe is None else universe)
    return {v: frozenset(rng.sample(universe, a)) for v in g.vertices}
