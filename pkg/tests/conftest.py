from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from hampreserve.graph import Graph

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def to_nx(G: Graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(G.n))
    g.add_edges_from(G.edges())
    return g


def from_nx(g: nx.Graph) -> Graph:
    idx = {v: i for i, v in enumerate(sorted(g.nodes()))}
    return Graph.from_edges(len(idx), [(idx[u], idx[v]) for u, v in g.edges()])


def nx_kappa(G: Graph) -> int:
    """Reference connectivity via networkx, with K_n mapped to n-1."""
    if G.n < 2:
        return 0
    return nx.node_connectivity(to_nx(G))


def is_cycle_of(G: Graph, cyc) -> bool:
    if sorted(cyc) != list(range(G.n)):
        return False
    return all(G.has_edge(cyc[i], cyc[(i + 1) % G.n]) for i in range(G.n))


def is_path_of(G: Graph, path, u=None, v=None) -> bool:
    if sorted(path) != list(range(G.n)):
        return False
    if u is not None and {path[0], path[-1]} != {u, v}:
        return False
    return all(G.has_edge(a, b) for a, b in zip(path, path[1:]))


@st.composite
def graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


@pytest.fixture
def petersen() -> Graph:
    return from_nx(nx.petersen_graph())


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(results[num])
