from __future__ import annotations

import pytest
from hypothesis import given

from hampreserve.connectivity import (
    ch_sufficient,
    check_path_system,
    covering_bridge_flow,
    disjoint_paths,
    is_k_connected,
    kappa,
    kappa_capped,
    min_vertex_cut,
    reference_bridge,
    separation_components,
)
from hampreserve.errors import InfeasibleError, NoCutError
from hampreserve.graph import Graph
from hampreserve.instances import gen_barbell_planted, gen_ch_tightness, gen_dirac
from hampreserve.oracle import brute_kappa
from hampreserve.preserve import separate

from conftest import graphs, nx_kappa


def test_kappa_small_examples(petersen):
    assert kappa(Graph.complete(5)) == 4
    assert kappa(Graph.cycle(6)) == 2
    assert kappa(petersen) == 3 == brute_kappa(petersen)


def test_is_k_connected_examples():
    assert is_k_connected(Graph.complete(5), 4)
    assert not is_k_connected(Graph.cycle(6), 3)
    G, _ = gen_barbell_planted(20, 3, seed=1)
    assert is_k_connected(G, 3) and not is_k_connected(G, 4)


def test_min_cut_cycle():
    cut = min_vertex_cut(Graph.cycle(6))
    assert len(cut.W) == 2
    assert len(separation_components(Graph.cycle(6), cut.W)) == 2


def test_min_cut_two_k4_sharing_vertex():
    E = [(u, v) for grp in ((0, 1, 2, 3), (3, 4, 5, 6)) for i, u in enumerate(grp) for v in grp[i + 1:]]
    assert min_vertex_cut(Graph.from_edges(7, E)).W == (3,)


def test_min_cut_barbell_window():
    G, planted = gen_barbell_planted(20, 3, seed=2)
    cut = min_vertex_cut(G)
    assert len(cut.W) == 3
    sep = separate(G, 1)
    assert sep.W == cut.W and sep.window_ok()


def test_min_cut_complete_raises():
    with pytest.raises(NoCutError):
        min_vertex_cut(Graph.complete(5))


def test_disjoint_paths_k6():
    ps = disjoint_paths(Graph.complete(6), {0, 1, 2}, {3, 4, 5}, 3)
    assert len(ps) == 3 and all(len(p) == 2 for p in ps.paths)


def test_disjoint_paths_cycle_arcs():
    ps = disjoint_paths(Graph.cycle(6), {0}, {3}, 2)
    assert sorted(len(p) for p in ps.paths) == [4, 4]
    assert ps.all_internal() == {1, 2, 4, 5}


def test_disjoint_paths_on_dense_graph():
    G = gen_dirac(30, seed=4, surplus=3)
    k = min(4, kappa(G))
    A, B = set(range(0, 8)), set(range(20, 30))
    ps = disjoint_paths(G, A, B, k)
    assert not check_path_system(G, ps, A, B)


def test_disjoint_paths_infeasible_reports_cut():
    with pytest.raises(InfeasibleError) as info:
        disjoint_paths(Graph.path(5), {0}, {4}, 2)
    assert info.value.cut is not None and len(info.value.cut) < 2


def test_covering_bridge_single_hub():
    E = [(u, v) for grp in (range(0, 5), range(5, 10)) for u in grp for v in grp if u < v]
    E += [(10, x) for x in range(10)] + [(0, 5), (1, 6), (2, 7)]
    G = Graph.from_edges(11, E)
    for k in range(1, 5):
        ps = covering_bridge_flow(G, range(5), range(5, 10), [10], k)
        assert len(ps) == k
        assert sum(1 for p in ps.paths if 10 in p) == 1
        assert all(len(p) == 3 for p in ps.paths if 10 in p)


def test_covering_bridge_empty_cut():
    E = [(u, v) for u in range(6) for v in range(u + 1, 6)]
    ps = covering_bridge_flow(Graph.from_edges(6, E), [0, 1, 2], [3, 4, 5], [], 2)
    assert len(ps) == 2 and all(len(p) == 2 for p in ps.paths)


def test_ch_sufficient():
    assert ch_sufficient(Graph.complete(7), 6)
    assert not ch_sufficient(Graph.cycle(6), 2)
    G = gen_ch_tightness(9, 2)
    assert not ch_sufficient(G, 2) and not is_k_connected(G, 2)


@given(graphs(min_n=2, max_n=8))
def test_kappa_matches_reference(G):
    assert kappa(G) == nx_kappa(G)


@given(graphs(min_n=2, max_n=8))
def test_capped_and_predicate_agree(G):
    k = kappa(G)
    assert kappa_capped(G, 2) == min(k, 2)
    assert is_k_connected(G, k) or k == 0
    assert not is_k_connected(G, k + 1)


@given(graphs(min_n=3, max_n=8))
def test_min_cut_disconnects(G):
    if G.is_complete() or kappa(G) == 0:
        return
    cut = min_vertex_cut(G)
    assert len(cut.W) == kappa(G)
    assert len(separation_components(G, cut.W)) >= 2


def test_reference_bridge_agrees_on_coverage():
    for k in (2, 3, 4):
        for seed in range(3):
            G, planted = gen_barbell_planted(4 * k + 12, k, seed, rich=bool(seed % 2))
            ref = reference_bridge(G, planted.G1, planted.G2, planted.W, k)
            flow = covering_bridge_flow(G, planted.G1, planted.G2, planted.W, k)
            for ps in (ref, flow):
                assert not check_path_system(G, ps, planted.G1, planted.G2)
                assert {v for p in ps.paths for v in p[1:-1]} == set(planted.W)
