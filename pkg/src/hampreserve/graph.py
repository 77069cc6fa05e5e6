"""Simple undirected graphs on dense integer labels.

Adjacency is a tuple of Python ints used as bitsets, so neighbourhood
intersections and popcounts are word-parallel. Graphs are immutable;
every operation returns a new graph.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from .errors import DomainError

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True, eq=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        if n < 0:
            raise DomainError("vertex count must be nonnegative")
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise DomainError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u},{v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def from_matrix(cls, mat: np.ndarray) -> "Graph":
        n = mat.shape[0]
        us, vs = np.nonzero(np.triu(mat, 1))
        return cls.from_edges(n, zip(us.tolist(), vs.tolist()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @property
    def vertices(self) -> range:
        return range(self.n)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(a.bit_count() for a in self.adj)

    def degree(self, v: int) -> int:
        return self.degrees[v]

    @cached_property
    def m(self) -> int:
        return sum(self.degrees) // 2

    @property
    def min_degree(self) -> int:
        return min(self.degrees) if self.n else 0

    @property
    def max_degree(self) -> int:
        return max(self.degrees) if self.n else 0

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    @cached_property
    def _edge_list(self) -> tuple[Edge, ...]:
        out = []
        for u in range(self.n):
            for v in bits(self.adj[u] >> (u + 1)):
                out.append((u, u + 1 + v))
        return tuple(out)

    def edges(self) -> list[Edge]:
        """Edges as sorted ``(u, v)`` tuples with ``u < v``."""
        return list(self._edge_list)

    def edge_set(self) -> set[Edge]:
        return set(self._edge_list)

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def matrix(self) -> np.ndarray:
        """Fresh ``uint8`` adjacency matrix (callers may mutate it)."""
        mat = np.zeros((self.n, self.n), dtype=np.uint8)
        if self._edge_list:
            e = np.asarray(self._edge_list, dtype=np.int64)
            mat[e[:, 0], e[:, 1]] = 1
            mat[e[:, 1], e[:, 0]] = 1
        return mat

    def digest(self) -> str:
        """SHA-256 of the canonical edge-list serialisation."""
        h = hashlib.sha256()
        h.update(f"{self.n} {self.m}\n".encode())
        for u, v in self._edge_list:
            h.update(f"{u} {v}\n".encode())
        return h.hexdigest()


# --------------------------------------------------------------------------
# set/subgraph algebra


def _check_vertices(G: Graph, S: Iterable[int]) -> list[int]:
    out = sorted(set(S))
    for v in out:
        if not 0 <= v < G.n:
            raise DomainError(f"vertex {v} not in graph of order {G.n}")
    return out


def induced_subgraph(G: Graph, S: Iterable[int]) -> tuple[Graph, list[int]]:
    """Subgraph induced by ``S``, relabelled to ``0..|S|-1``.

    Returns the graph and ``labels`` with ``labels[i]`` the original
    vertex of new vertex ``i``.
    """
    labels = _check_vertices(G, S)
    if not labels:
        raise DomainError("induced subgraph of an empty vertex set")
    index = {v: i for i, v in enumerate(labels)}
    smask = mask_of(labels)
    adj = []
    for v in labels:
        row = 0
        for w in bits(G.adj[v] & smask):
            row |= 1 << index[w]
        adj.append(row)
    return Graph(len(labels), tuple(adj)), labels


def _check_edges(G: Graph, F: Iterable[Edge]) -> set[Edge]:
    out = set()
    for u, v in F:
        if not (0 <= u < G.n and 0 <= v < G.n) or not G.has_edge(u, v):
            raise DomainError(f"({u},{v}) is not an edge of the host graph")
        out.add(edge(u, v))
    return out


def remove_edges(G: Graph, F: Iterable[Edge]) -> Graph:
    adj = list(G.adj)
    for u, v in _check_edges(G, F):
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
    return Graph(G.n, tuple(adj))


def add_edges(G: Graph, F: Iterable[Edge]) -> Graph:
    adj = list(G.adj)
    for u, v in F:
        if u == v:
            raise DomainError(f"self-loop at {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(G.n, tuple(adj))


def edge_induced(G: Graph, F: Iterable[Edge]) -> tuple[Graph, list[int]]:
    """Graph on the endpoints of ``F`` with edge set exactly ``F``."""
    F = _check_edges(G, F)
    if not F:
        raise DomainError("edge-induced subgraph of an empty edge set")
    labels = sorted({v for e in F for v in e})
    index = {v: i for i, v in enumerate(labels)}
    return Graph.from_edges(len(labels), [(index[u], index[v]) for u, v in F]), labels


def crossing_edges(G: Graph, A: Iterable[int], B: Iterable[int]) -> list[Edge]:
    amask, bmask = mask_of(A), mask_of(B)
    if amask & bmask:
        raise DomainError("crossing_edges needs disjoint vertex sets")
    out = []
    for a in bits(amask):
        for b in bits(G.adj[a] & bmask):
            out.append(edge(a, b))
    return sorted(out)


def components(G: Graph, within: int | None = None) -> list[list[int]]:
    """Connected components of the subgraph induced by bitset ``within``."""
    remaining = ((1 << G.n) - 1) if within is None else within
    comps = []
    while remaining:
        start = remaining & -remaining
        seen = start
        frontier = start
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= G.adj[v]
            nxt &= remaining & ~seen
            seen |= nxt
            frontier = nxt
        remaining &= ~seen
        comps.append(list(bits(seen)))
    return comps


def is_connected(G: Graph) -> bool:
    return G.n <= 1 or len(components(G)) == 1


def bfs_order(G: Graph, source: int) -> list[int]:
    seen = {source}
    order = [source]
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in bits(G.adj[u]):
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order


# --------------------------------------------------------------------------
# degree profile


@dataclass(frozen=True)
class DegreeProfile:
    """Sorted degree sequence with the tail counter ``psi``.

    ``psi(j)`` is the number of vertices whose degree is at most ``j``.
    """

    degrees: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def min_degree(self) -> int:
        return self.degrees[0] if self.degrees else 0

    @property
    def max_degree(self) -> int:
        return self.degrees[-1] if self.degrees else 0

    def psi(self, j: int) -> int:
        import bisect

        return bisect.bisect_right(self.degrees, j)


def degree_profile(G: Graph) -> DegreeProfile:
    return DegreeProfile(tuple(sorted(G.degrees)))
