from __future__ import annotations

from hypothesis import given, strategies as st

from hampreserve.errors import DomainError
from hampreserve.graph import (
    Graph,
    crossing_edges,
    degree_profile,
    edge_induced,
    induced_subgraph,
    remove_edges,
)
from hampreserve.rng import XorShift64Star

from conftest import graphs

import pytest


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = XorShift64Star(seed)
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def test_induced_clique():
    H, labels = induced_subgraph(Graph.complete(4), {0, 1, 2})
    assert H.edge_set() == Graph.complete(3).edge_set()
    assert labels == [0, 1, 2]


def test_induced_cycle_gives_path():
    H, labels = induced_subgraph(Graph.cycle(5), {0, 1, 2})
    assert H.edges() == [(0, 1), (1, 2)]


def test_induced_matches_filter():
    G = random_graph(10, 0.5, 3)
    S = [1, 2, 4, 6, 7, 9]
    H, labels = induced_subgraph(G, S)
    want = {(u, v) for u, v in G.edges() if u in S and v in S}
    got = {(labels[a], labels[b]) for a, b in H.edges()}
    assert got == want


def test_remove_matching_from_k4():
    assert remove_edges(Graph.complete(4), [(0, 1), (2, 3)]).edge_set() == {(0, 2), (0, 3), (1, 2), (1, 3)}


def test_remove_nothing_and_path():
    G = Graph.cycle(6)
    assert remove_edges(G, []) == G
    assert remove_edges(G, [(0, 1)]).m == 5


def test_remove_non_edge_rejected():
    with pytest.raises(DomainError):
        remove_edges(Graph.path(3), [(0, 2)])


def test_edge_induced():
    H, labels = edge_induced(Graph.complete(4), [(0, 1), (2, 3)])
    assert H.m == 2 and H.max_degree == 1
    C5 = Graph.cycle(5)
    H, _ = edge_induced(C5, C5.edges())
    assert H.edge_set() == C5.edge_set()


def test_edge_induced_degrees_count_incidences():
    G = random_graph(12, 0.5, 9)
    F = G.edges()[::3]
    H, labels = edge_induced(G, F)
    for i, v in enumerate(labels):
        assert H.degree(i) == sum(1 for e in F if v in e)


def test_crossing_edges():
    assert sorted(crossing_edges(Graph.complete(4), {0, 1}, {2, 3})) == [(0, 2), (0, 3), (1, 2), (1, 3)]
    two_triangles = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert crossing_edges(two_triangles, {0, 1, 2}, {3, 4, 5}) == []


def test_degree_profile():
    p = degree_profile(Graph.complete(5))
    assert p.psi(3) == 0 and p.psi(4) == 5
    star = Graph.from_edges(5, [(0, i) for i in range(1, 5)])
    p = degree_profile(star)
    assert p.psi(1) == 4 and p.psi(4) == 5


def test_degree_profile_recount():
    G = random_graph(12, 0.4, 5)
    p = degree_profile(G)
    for j in range(12):
        assert p.psi(j) == sum(1 for v in range(12) if G.degree(v) <= j)


def test_self_loop_rejected():
    with pytest.raises(DomainError):
        Graph.from_edges(3, [(1, 1)])


def test_digest_is_label_sensitive_and_stable():
    assert Graph.path(4).digest() == Graph.path(4).digest()
    assert Graph.path(4).digest() != Graph.cycle(4).digest()


@given(graphs(max_n=9), st.data())
def test_crossing_edges_property(G, data):
    A = set(data.draw(st.lists(st.integers(0, G.n - 1), unique=True)))
    B = set(range(G.n)) - A
    got = set(crossing_edges(G, A, B))
    want = {e for e in G.edges() if (e[0] in A) != (e[1] in A)}
    assert got == want


@given(graphs(max_n=9))
def test_remove_edges_property(G):
    F = G.edges()[::2]
    H = remove_edges(G, F)
    assert H.m == G.m - len(F)
    assert not any(H.has_edge(*e) for e in F)
