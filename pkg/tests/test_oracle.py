from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given

from hampreserve.errors import SizeError, StaleCertificateError
from hampreserve.graph import Graph
from hampreserve.instances import gen_barbell_dirac
from hampreserve.oracle import (
    brute_ham_enum,
    brute_is_k_connected,
    brute_kappa,
    brute_max_pairs,
    brute_preserving_exists,
    brute_preserving_witness,
    verify_certificate,
)
from hampreserve.preserve import preserve_exact, preserve_one

from conftest import graphs, is_cycle_of, nx_kappa


def test_ham_enum_counts(petersen):
    assert len(brute_ham_enum(Graph.complete(4))) == 3
    assert brute_ham_enum(Graph.cycle(5)) == [[0, 1, 2, 3, 4]]
    assert brute_ham_enum(petersen) == []


def test_ham_enum_canonical_form():
    for cyc in brute_ham_enum(Graph.complete(6)):
        assert cyc[0] == 0 and cyc[1] < cyc[-1]
    assert len(brute_ham_enum(Graph.complete(6))) == 60
    assert len(brute_ham_enum(Graph.complete(6), limit=7)) == 7


def test_brute_max_pairs_examples():
    assert brute_max_pairs(Graph.path(5)) == 2
    assert brute_max_pairs(Graph.from_edges(5, [(0, i) for i in range(1, 5)])) == 0
    assert brute_max_pairs(Graph.complete(3)) == 0


def test_brute_preserving():
    assert brute_preserving_exists(Graph.complete(7), 2)
    w = brute_preserving_witness(Graph.complete(7), 2)
    assert is_cycle_of(Graph.complete(7), w)
    with pytest.raises(SizeError):
        brute_preserving_exists(Graph.complete(13), 2)


def test_verifier_accepts_pipeline_output():
    G = Graph.complete(7)
    rep = verify_certificate(G, preserve_one(G, 2), 2)
    assert rep.passed and rep.to_dict()["passed"]


def test_verifier_flags_swapped_edge():
    G = gen_barbell_dirac(30, 2, seed=3)
    d = preserve_one(G, 2).to_dict()
    cyc = d["cycles"][0]
    i = next(i for i in range(len(cyc)) if not G.has_edge(cyc[i], cyc[(i + 2) % len(cyc)]))
    cyc[(i + 1) % len(cyc)], cyc[(i + 2) % len(cyc)] = cyc[(i + 2) % len(cyc)], cyc[(i + 1) % len(cyc)]
    rep = verify_certificate(G, d, 2)
    assert not rep.passed
    bad = [c for c in rep.failures() if c.name == "hamiltonian[0]"][0]
    assert any(p["reason"] == "non-edge" for p in bad.detail)


def test_verifier_exact_mode_rejects_higher_connectivity():
    G = gen_barbell_dirac(30, 2, seed=1)
    cert = preserve_exact(G, 1)
    assert verify_certificate(G, cert, 2, exact=True).passed
    rep = verify_certificate(G, cert, 1, exact=True)
    assert not rep.passed and rep.failures()[0].name == "remainder_kappa_exact"


def test_verifier_reports_cut_when_not_connected():
    G = Graph.complete(5)
    cert = {"input_hash": G.digest(), "cycles": [[0, 1, 2, 3, 4]]}
    rep = verify_certificate(G, cert, 3)
    fail = rep.failures()[0]
    assert fail.name == "remainder_k_connected" and fail.detail is None or len(fail.detail["cut"]) < 3


def test_verifier_rejects_repeated_edges():
    G = Graph.complete(7)
    cert = {"input_hash": G.digest(), "cycles": [list(range(7)), list(range(7))]}
    rep = verify_certificate(G, cert, 1)
    assert [c.name for c in rep.failures()] == ["edge_disjoint"]


def test_verifier_rejects_foreign_certificate():
    with pytest.raises(StaleCertificateError):
        verify_certificate(Graph.complete(6), preserve_one(Graph.complete(7), 2), 2)


@given(graphs(min_n=2, max_n=7))
def test_brute_kappa_matches_reference(G):
    assert brute_kappa(G) == nx_kappa(G)
    k = brute_kappa(G)
    assert brute_is_k_connected(G, k) or k == 0
    assert not brute_is_k_connected(G, k + 1)


@given(graphs(min_n=3, max_n=7))
def test_ham_enum_matches_networkx_count(G):
    g = nx.Graph(G.edges())
    g.add_nodes_from(range(G.n))
    ours = brute_ham_enum(G)
    for cyc in ours:
        assert is_cycle_of(G, cyc)
    assert len({tuple(c) for c in ours}) == len(ours)
