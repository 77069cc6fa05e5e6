from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from hampreserve.connectivity import is_k_connected, kappa
from hampreserve.errors import DomainError
from hampreserve.graph import Graph
from hampreserve.hamilton import lemma_h_applicable
from hampreserve.instances import (
    InstanceSpec,
    adversarial_cycle,
    gen_barbell_dirac,
    gen_barbell_planted,
    gen_ch_tightness,
    gen_dirac,
    gen_lemma_h,
)
from hampreserve.io import format_edge_list
from hampreserve.preserve import separate
from hampreserve.rng import XorShift64Star, splitmix64

from conftest import nx_kappa


def test_splitmix_reference_value():
    assert splitmix64(0) == 0xE220A8397B1DCDAF


def test_rng_ranges_and_determinism():
    a, b = XorShift64Star(5), XorShift64Star(5)
    xs = [a.randint(3, 9) for _ in range(200)]
    assert xs == [b.randint(3, 9) for _ in range(200)]
    assert set(xs) == set(range(3, 10))
    assert all(0 <= XorShift64Star(s).random() < 1 for s in range(50))


def test_gen_dirac_examples():
    G = gen_dirac(10, seed=0)
    assert G.min_degree >= 5
    assert gen_dirac(3).edge_set() == Graph.complete(3).edge_set()
    assert gen_dirac(40, seed=8) == gen_dirac(40, seed=8)
    assert gen_dirac(40, seed=8) != gen_dirac(40, seed=9)


def test_gen_dirac_surplus():
    G = gen_dirac(30, seed=2, surplus=3)
    assert G.min_degree >= 18
    with pytest.raises(DomainError):
        gen_dirac(10, surplus=6)


def test_barbell_examples():
    G = gen_barbell_dirac(20, 2)
    assert nx_kappa(G) == 2 and G.min_degree >= 10
    G, planted = gen_barbell_planted(24, 3, seed=0)
    sep = separate(G, 1, W=planted.W)
    assert sep.window_ok() and len(planted.W) == 3
    with pytest.raises(DomainError):
        gen_barbell_dirac(20, 10)


def test_rich_barbell_has_hubs():
    G, planted = gen_barbell_planted(40, 4, seed=3, rich=True)
    assert planted.hubs and set(planted.hubs) <= set(planted.W)
    for h in planted.hubs:
        assert any(G.has_edge(h, x) for x in planted.G1)
        assert any(G.has_edge(h, x) for x in planted.G2)


def test_adversarial_cycle_drops_connectivity():
    G, planted = gen_barbell_planted(34, 4, seed=2)
    cyc = adversarial_cycle(G, planted, seed=2)
    assert cyc is not None
    R = Graph.from_edges(G.n, [e for e in G.edges() if e not in {tuple(sorted(p)) for p in zip(cyc, cyc[1:] + cyc[:1])}])
    assert not is_k_connected(R, 4)


def test_ch_tightness_examples():
    G = gen_ch_tightness(9, 2)
    assert G.min_degree == 4 and nx_kappa(G) == 1 and G.m == 20
    G = gen_ch_tightness(10, 3)
    assert G.min_degree == 5 and nx_kappa(G) == 2
    with pytest.raises(DomainError):
        gen_ch_tightness(10, 2)


def test_lemma_h_generator():
    G, V1, V2, req = gen_lemma_h(40, 2, seed=1)
    assert lemma_h_applicable(G, V1, V2, 2)
    assert len(req) == 2 and all(a != b for a, b in req)


def test_instance_spec_header_roundtrip():
    spec = InstanceSpec("dirac", 20, seed=4)
    text = format_edge_list(spec.generate(), [spec.header()])
    assert text.startswith("# hampreserve instance family=dirac n=20")
    with pytest.raises(DomainError):
        InstanceSpec("nope", 10).generate()


@settings(max_examples=25)
@given(st.integers(2, 5), st.integers(0, 2**32), st.booleans(), st.integers(0, 20))
def test_barbell_connectivity_is_exact(k, seed, rich, extra):
    n = 4 * k + 8 + 2 * extra
    G, planted = gen_barbell_planted(n, k, seed, rich=rich)
    assert kappa(G) == k
    assert 2 * G.min_degree >= n
