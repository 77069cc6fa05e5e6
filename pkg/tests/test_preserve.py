from __future__ import annotations

import json

import pytest
from hypothesis import given, settings, strategies as st

from hampreserve.connectivity import kappa
from hampreserve.errors import BoundViolationError, DomainError, InternalConsistencyError
from hampreserve.graph import Graph, edge, remove_edges
from hampreserve.hamilton import cycle_edges
from hampreserve.instances import adversarial_cycle, gen_barbell_dirac, gen_barbell_planted, gen_dirac
from hampreserve.oracle import verify_certificate
from hampreserve.preserve import (
    PreserveCertificate,
    assemble_cycles,
    bound_exact,
    bound_many,
    bound_one,
    build_bridge,
    find_q1_pairs,
    find_w_stars,
    preserve_exact,
    preserve_many,
    preserve_one,
    repair_with,
    select_q_split,
    separate,
)

from conftest import nx_kappa


def test_bounds():
    assert [bound_one(k) for k in (2, 3, 4, 5)] == [24, 28, 34, 40]
    assert [bound_exact(2, l) for l in (1, 2, 3)] == [16, 24, 32]
    assert [bound_exact(3, l) for l in (1, 2, 3)] == [20, 28, 36]
    assert bound_many(2, 2) >= bound_one(2)


def test_select_q_split():
    assert select_q_split(10, 2, 2, 1) == (1, 0)
    assert select_q_split(3, 2, 2, 1) == (0, 1)
    assert select_q_split(20, 0, 4, 2) == (2, 0)
    with pytest.raises(DomainError):
        select_q_split([(0, 1)], [(2, 3)], 2, 1)


def test_q1_pairs_from_two_matching_edges():
    G = Graph.complete(8)
    M = [(0, 4), (1, 5), (2, 6), (3, 7)]
    pairs = find_q1_pairs(G, M, [], 2, side1=[0, 1, 2, 3])
    assert len(pairs) == 2
    used = [e for p in pairs for e in (p.e1, p.e2)]
    assert len(set(used)) == 4 and all(e[0] < 4 for e in used)


def test_q1_pairs_star_has_none():
    G = Graph.complete(6)
    star = [(0, 3), (0, 4), (0, 5)]
    with pytest.raises(InternalConsistencyError):
        find_q1_pairs(G, star, [], 1)


def _stage(n, k, seed, rich):
    G, planted = gen_barbell_planted(n, k, seed, rich=rich)
    sep = separate(G, 2, W=planted.W)
    return G, planted, sep


def test_bridge_covers_cut():
    G, planted, sep = _stage(40, 4, 3, rich=False)
    br = build_bridge(G, sep, 4)
    assert len(br.paths) == 4
    inner = {v for p in br.paths for v in p[1:-1]}
    assert inner == set(sep.W)
    assert all(p[0] in sep.G1 and p[-1] in sep.G2 for p in br.paths)
    assert br.straddles()


def test_w_stars_exact_variant_avoid_bridge():
    for ell in (1, 2, 3):
        G = gen_barbell_dirac(bound_exact(3, ell) + 6, 3, seed=ell)
        sep = separate(G, 0)
        br = build_bridge(G, sep, 3, exact=True)
        w1, w2, Q2 = find_w_stars(G, sep, br, ell, strict=False)
        assert len(Q2) == ell
        ends = [x for c1, c2 in Q2 for x in (c1[0], c1[2], c2[0], c2[2])]
        spokes = [edge(x, w) for c1, c2 in Q2 for (a, (w,), b) in (c1, c2) for x in (a, b)]
        assert not set(spokes) & set(br.B)
        assert len(set(spokes)) == len(spokes) == 4 * ell
        assert {w1, w2} <= set(sep.W) and len(ends) == 4 * ell


def test_w_stars_need_positive_q2():
    G, planted, sep = _stage(40, 4, 3, rich=False)
    with pytest.raises(DomainError):
        find_w_stars(G, sep, build_bridge(G, sep, 4), 0)


def test_assemble_with_edge_pair():
    G = Graph.complete(8)
    conns = ((0, (), 4), (3, (), 7))
    cyc = assemble_cycles([[0, 1, 2, 3]], [[7, 6, 5, 4]], [conns])[0]
    assert sorted(cyc) == list(range(8))
    assert all(G.has_edge(cyc[i], cyc[(i + 1) % 8]) for i in range(8))


def test_assemble_with_middle_vertices():
    conns = ((0, (8,), 4), (3, (9,), 7))
    cyc = assemble_cycles([[0, 1, 2, 3]], [[4, 5, 6, 7]], [], [conns])[0]
    assert cyc == [0, 1, 2, 3, 9, 7, 6, 5, 4, 8]


def test_assemble_mismatch():
    with pytest.raises(InternalConsistencyError):
        assemble_cycles([[0, 1]], [[2, 3]], [((5, (), 2), (1, (), 3))])


def test_preserve_one_k7():
    G = Graph.complete(7)
    cert = preserve_one(G, 2)
    R = remove_edges(G, cycle_edges(cert.cycles[0]))
    assert R.degrees == (4,) * 7 and nx_kappa(R) == 4
    assert verify_certificate(G, cert, 2).passed


def test_preserve_one_barbell_40():
    G = gen_barbell_dirac(40, 2, seed=0)
    assert verify_certificate(G, preserve_one(G, 2), 2).passed


@pytest.mark.parametrize("n,k,rich", [(28, 3, False), (34, 4, True), (40, 5, False), (40, 5, True), (96, 3, True)])
def test_repair_branch_on_adversarial_start(n, k, rich):
    G, planted = gen_barbell_planted(n, k, seed=1, rich=rich)
    start = adversarial_cycle(G, planted, seed=1)
    assert start is not None
    assert kappa(remove_edges(G, cycle_edges(start))) < k
    cert = preserve_one(G, k, initial_cycle=start, strict=True)
    assert cert.repaired
    assert verify_certificate(G, cert.to_dict(), k).passed
    stages = [e["stage"] for e in cert.stage_log]
    assert "separation" in stages and "bridge" in stages


def _two_cliques(a: int, crossings: int):
    """Two a-cliques, a 2-vertex cut joined to everything, and a partial matching."""
    S1, S2 = list(range(2, 2 + a)), list(range(2 + a, 2 + 2 * a))
    E = {edge(u, v) for grp in (S1, S2) for i, u in enumerate(grp) for v in grp[i + 1:]}
    E |= {edge(w, x) for w in (0, 1) for x in S1 + S2}
    M = [edge(x, y) for x, y in list(zip(S1, S2))[:crossings]]
    return Graph.from_edges(2 + 2 * a, sorted(E | set(M))), M


def _check_repair(G, k, cycles, q):
    assert len(cycles) == q
    cert = {"input_hash": G.digest(), "cycles": cycles}
    assert verify_certificate(G, cert, k).passed


@pytest.mark.parametrize("q", [1, 2, 3])
def test_repair_with_full_matching(q):
    G, M = _two_cliques(17, 17)
    cycles, structs, _ = repair_with(G, 3, M, 2, q)
    assert structs["budget"]["q1"] == q
    _check_repair(G, 3, cycles, q)


@pytest.mark.parametrize("crossings", [4, 5, 6])
def test_repair_with_mixed_connectors(crossings):
    G, M = _two_cliques(22, crossings)
    cycles, structs, _ = repair_with(G, 3, M, 2, 3)
    bud = structs["budget"]
    M_B = [tuple(e) for e in bud["M_B"]]
    assert (bud["q1"], bud["q2"]) == select_q_split(len(M), len(M_B), 2, 3)
    for pr in bud["Q1"]:
        for x, mid, y in pr:
            assert mid == [] and edge(x, y) in M and edge(x, y) not in M_B
    for pr in bud["Q2"]:
        assert [mid for _, mid, _ in pr] == [[w] for w in bud["w_star"]]
    _check_repair(G, 3, cycles, 3)


def test_preserve_many_k11():
    G = Graph.complete(11)
    cert = preserve_many(G, 2, 2)
    R = G
    for c in cert.cycles:
        R = remove_edges(R, cycle_edges(c))
    assert R.degrees == (6,) * 11
    assert verify_certificate(G, cert, 2).passed


def test_preserve_many_barbell_96():
    G = gen_barbell_dirac(96, 3, seed=2)
    cert = preserve_many(G, 3, 2)
    assert len(cert.cycles) == 2 and verify_certificate(G, cert, 3).passed


def test_preserve_many_single_cycle_delegates():
    G = gen_dirac(30, 1, surplus=1)
    assert preserve_many(G, 2, 1).cycles == preserve_one(G, 2).cycles


@pytest.mark.parametrize("n,k,ell", [(30, 2, 1), (60, 3, 3), (60, 3, 2)])
def test_preserve_exact(n, k, ell):
    G = gen_barbell_dirac(n, k, seed=4)
    cert = preserve_exact(G, ell)
    assert cert.kappa_before == cert.kappa_after == k
    assert verify_certificate(G, cert, k, exact=True).passed


def test_preserve_exact_rejects_complete():
    with pytest.raises(DomainError):
        preserve_exact(Graph.complete(9), 1)


def test_input_below_connectivity_rejected():
    G = Graph.cycle(30)
    with pytest.raises(BoundViolationError):
        preserve_one(G, 3)
    with pytest.raises(DomainError):
        preserve_one(Graph.complete(30), 1)


def test_below_bound_is_warned():
    G = gen_dirac(14, 2, surplus=2)
    cert = preserve_one(G, 2)
    assert any("does not hold" in w for w in cert.warnings)
    with pytest.raises(BoundViolationError):
        preserve_one(G, 2, strict=True)


def test_certificate_json_roundtrip():
    G = gen_barbell_dirac(40, 3, seed=9)
    cert = preserve_one(G, 3)
    back = PreserveCertificate.from_json(cert.to_json())
    assert back == cert
    assert json.loads(cert.to_json())["schema"] == "preserve-cert/1"
    with pytest.raises(DomainError):
        PreserveCertificate.from_dict({**cert.to_dict(), "schema": "other"})


@settings(max_examples=15)
@given(st.integers(2, 5), st.integers(0, 2**32), st.booleans())
def test_barbell_preservation_property(k, seed, rich):
    n = bound_one(k) + (seed % 12) * 2
    G, planted = gen_barbell_planted(n, k, seed, rich=rich)
    start = adversarial_cycle(G, planted, seed)
    cert = preserve_one(G, k, initial_cycle=start, strict=True)
    assert verify_certificate(G, cert, k).passed
