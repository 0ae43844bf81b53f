import math

import pytest
from hypothesis import given

from choosability.errors import InputError
from choosability.graph import (build_graph, cycle_graph, degree, girth,
                                induced_subgraph, is_triangle_free, path_graph,
                                star_graph, theta_graph)

from conftest import small_graphs


def test_build_k2():
    g = build_graph(2, [(0, 1)])
    assert [g.degree(v) for v in g.vertices] == [1, 1]


def test_build_triangle():
    g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert all(g.degree(v) == 2 for v in g.vertices)


def test_build_dedups_edges():
    g = build_graph(4, [(0, 1), (0, 1), (1, 2)])
    assert len(g.edges) == 2


def test_build_rejects_self_loop():
    with pytest.raises(InputError):
        build_graph(3, [(1, 1)])


def test_build_rejects_out_of_range():
    with pytest.raises(InputError):
        build_graph(2, [(0, 2)])


def test_induced_triangle_to_k2():
    g = cycle_graph(3)
    sub, mapping = induced_subgraph(g, {0, 1})
    assert sub.n == 2 and sub.edges == ((0, 1),)
    assert mapping == {0: 0, 1: 1}


def test_induced_identity():
    g = cycle_graph(5)
    sub, mapping = induced_subgraph(g, g.vertices)
    assert sub.edges == g.edges
    assert mapping == {v: v for v in g.vertices}


def test_induced_alternate_c6_is_edgeless():
    sub, _ = induced_subgraph(cycle_graph(6), {0, 2, 4})
    assert sub.n == 3 and sub.edges == ()


def test_degree_examples():
    assert degree(build_graph(2, [(0, 1)]), 0) == 1
    assert degree(cycle_graph(6), 3) == 2
    assert degree(star_graph(3), 0) == 3


def test_degree_out_of_range():
    with pytest.raises(InputError):
        degree(cycle_graph(3), 7)


def test_triangle_free_examples():
    assert not is_triangle_free(cycle_graph(3))
    assert is_triangle_free(cycle_graph(6))
    assert is_triangle_free(build_graph(0, []))


def test_girth_examples():
    assert girth(cycle_graph(6)) == 6
    assert girth(path_graph(5)) == math.inf
    pendant = build_graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    assert girth(pendant) == 3


def test_theta_shape():
    g = theta_graph((4, 4, 4))
    assert g.n == 11
    assert g.degree(0) == 3 and g.degree(1) == 3
    assert sum(g.degree(v) for v in g.vertices) == 2 * len(g.edges)
    assert girth(g) == 8


@given(small_graphs())
def test_degree_sum_is_twice_edges(g):
    assert sum(g.degree(v) for v in g.vertices) == 2 * len(g.edges)


@given(small_graphs())
def test_induced_subgraph_is_monotone(g):
    keep = [v for v in g.vertices if v % 2 == 0]
    sub, mapping = induced_subgraph(g, keep)
    inverse = {new: old for old, new in mapping.items()}
    for u, v in sub.edges:
        assert g.has_edge(inverse[u], inverse[v])


@given(small_graphs())
def test_girth_three_iff_triangle(g):
    if girth(g) == 3:
        assert not is_triangle_free(g)
    if not is_triangle_free(g):
        assert girth(g) == 3
