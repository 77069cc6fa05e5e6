from __future__ import annotations

import networkx as nx

from hampreserve.connectivity import is_k_connected
from hampreserve.suites import SUITES, dirac_graphs, run_suite

from conftest import to_nx


def test_dirac_graph_enumeration_matches_atlas():
    for n in (6, 7):
        atlas = [g for g in nx.graph_atlas_g() if g.number_of_nodes() == n]
        want = sum(1 for g in atlas if min(d for _, d in g.degree()) >= (n + 1) // 2)
        ours = dirac_graphs(n)
        assert len(ours) == want
        assert all(2 * G.min_degree >= n for G in ours)
        gs = [to_nx(G) for G in ours]
        assert not any(nx.is_isomorphic(a, b) for i, a in enumerate(gs) for b in gs[i + 1:])


def test_every_suite_builds():
    for name, build in SUITES.items():
        assert build(2, 0), name


def test_small_runs_pass():
    for name in ("thm7-oracle", "dirac-extraction", "lemma-h", "exact", "kappa-oracle", "preserve-k3"):
        res = run_suite(name, trials=3, seed=1)
        assert res.ok, (name, res.failures)


def test_parallel_matches_serial():
    a = run_suite("thm7-oracle", trials=6, seed=2, jobs=1)
    b = run_suite("thm7-oracle", trials=6, seed=2, jobs=2)
    assert (a.passed, a.failed) == (b.passed, b.failed)


def test_n7_candidates_are_two_connected():
    from hampreserve.suites import suite_n7

    trials = suite_n7(None, 0)
    assert trials and all(len(t.args[0]) >= 14 for t in trials)
    assert all(is_k_connected(G, 2) for G in dirac_graphs(7))
