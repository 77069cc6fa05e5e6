"""Hamiltonian cycles and paths.

The constructive routines are closure based: saturate the graph under a
degree-sum rule, take the trivial cycle in the (complete) closure, then
remove the added edges newest-first, rotating the cycle around a crossing
chord whenever a removed edge lies on it.

Search-based helpers (`find_ham_cycle`, `find_ham_path`, `iter_ham_cycles`)
exist for fallbacks and oracles and are never used silently by the
constructive operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .errors import (
    DomainError,
    ExtractionFailure,
    InternalConsistencyError,
    NotApplicableError,
)
from .graph import DegreeProfile, Edge, Graph, bits, degree_profile, edge
from .rng import XorShift64Star

SEARCH_BUDGET = 10**6


@dataclass(frozen=True)
class ClosureTrace:
    graph: Graph
    added: tuple[tuple[int, int, int], ...]  # (u, v, degree sum at insertion)
    threshold: int

    @property
    def is_complete(self) -> bool:
        return self.graph.is_complete()


def _closure_arrays(mat: np.ndarray, threshold: int, eligible: np.ndarray):
    n = mat.shape[0]
    deg = mat.sum(axis=1, dtype=np.int64)
    out = np.zeros((max(1, n * (n - 1) // 2), 3), dtype=np.int64)
    count = kernels.closure_fill(mat, deg, int(threshold), eligible, out)
    return out[:count], int(count)


def closure(G: Graph, t: int) -> ClosureTrace:
    """Fixpoint of joining nonadjacent ``u, v`` with ``deg(u)+deg(v) >= t``."""
    mat = G.matrix()
    eligible = np.ones(G.n, dtype=np.uint8)
    added, _ = _closure_arrays(mat, t, eligible)
    final = Graph.from_matrix(mat) if len(added) else G
    return ClosureTrace(final, tuple(tuple(int(x) for x in row) for row in added), t)


def _unwind(mat: np.ndarray, added: np.ndarray, cycle: list[int]) -> list[int]:
    n = len(cycle)
    cyc = np.asarray(cycle, dtype=np.int64)
    pos = np.empty(n, dtype=np.int64)
    pos[cyc] = np.arange(n)
    scratch = np.empty(n, dtype=np.int64)
    added = np.ascontiguousarray(added, dtype=np.int64).reshape(-1, 3)
    stuck = kernels.unwind_cycle(mat, added, len(added), cyc, pos, scratch)
    if stuck >= 0:
        u, v, s = (int(x) for x in added[stuck])
        raise InternalConsistencyError(
            f"no rotation chord while removing closure edge ({u},{v}) with degree sum {s}"
        )
    return cyc.tolist()


# --------------------------------------------------------------------------
# verification


def is_ham_cycle(G: Graph, cycle: Sequence[int]) -> bool:
    n = G.n
    if n < 3 or len(cycle) != n or set(cycle) != set(range(n)):
        return False
    return all(G.has_edge(cycle[i], cycle[(i + 1) % n]) for i in range(n))


def is_ham_path(G: Graph, path: Sequence[int], u: int | None = None, v: int | None = None) -> bool:
    n = G.n
    if len(path) != n or set(path) != set(range(n)):
        return False
    if not all(G.has_edge(path[i], path[i + 1]) for i in range(n - 1)):
        return False
    if u is not None and v is not None:
        return {path[0], path[-1]} == {u, v} and (u != v or n == 1)
    return True


def cycle_edges(cycle: Sequence[int]) -> list[Edge]:
    n = len(cycle)
    return [edge(cycle[i], cycle[(i + 1) % n]) for i in range(n)]


def path_edges(path: Sequence[int]) -> list[Edge]:
    return [edge(path[i], path[i + 1]) for i in range(len(path) - 1)]


# --------------------------------------------------------------------------
# Dirac graphs


def ham_cycle_dirac(G: Graph) -> list[int]:
    """Hamiltonian cycle of a graph whose n-closure is complete."""
    n = G.n
    if n < 3:
        raise DomainError("a Hamiltonian cycle needs at least 3 vertices")
    mat = G.matrix()
    added, _ = _closure_arrays(mat, n, np.ones(n, dtype=np.uint8))
    if not bool(mat.sum() == n * (n - 1)):
        raise NotApplicableError("n-closure is not complete")
    cycle = _unwind(mat, added, list(range(n)))
    if not is_ham_cycle(G, cycle):
        raise InternalConsistencyError("unwound cycle is not Hamiltonian in the input")
    return cycle


# --------------------------------------------------------------------------
# Hamiltonian-connected graphs


def _first_psi_violation(profile: DegreeProfile, lo: int, hi: int, offset: int) -> int | None:
    """Least ``j`` in ``[lo, hi]`` with ``psi(j) >= j - offset`` (None if none)."""
    for j in range(lo, hi + 1):
        if profile.psi(j) >= j - offset:
            return j
    return None


def ckk_condition(G: Graph) -> bool:
    """``psi_j < j - 1`` for all ``2 <= j <= n/2``."""
    if G.n < 4:
        return False
    return _first_psi_violation(degree_profile(G), 2, G.n // 2, 1) is None


def ham_path_between(G: Graph, u: int, v: int, fallback: bool = False) -> list[int]:
    """Hamiltonian ``u``-``v`` path through an apex closure.

    An apex ``z`` joined only to ``u`` and ``v`` is added; the (n+1)-closure
    over the original vertices is complete under the degree condition, so
    ``z, u, <rest>, v`` is a Hamiltonian cycle of the closure. Unwinding it
    and deleting ``z`` leaves the path. With ``fallback=True`` a failed
    condition is answered by backtracking search instead of an error.
    """
    n = G.n
    if not (0 <= u < n and 0 <= v < n) or u == v:
        raise DomainError("endpoints must be two distinct vertices")
    if n <= 3 or not ckk_condition(G):
        if fallback:
            path = find_ham_path(G, u, v)
            if path is None:
                raise NotApplicableError(f"no Hamiltonian path between {u} and {v}")
            return path
        raise NotApplicableError("degree condition for Hamiltonian-connectedness fails")
    z = n
    mat = np.zeros((n + 1, n + 1), dtype=np.uint8)
    mat[:n, :n] = G.matrix()
    mat[z, u] = mat[u, z] = mat[z, v] = mat[v, z] = 1
    eligible = np.ones(n + 1, dtype=np.uint8)
    eligible[z] = 0
    added, _ = _closure_arrays(mat, n + 1, eligible)
    if int(mat[:n, :n].sum()) != n * (n - 1):
        raise InternalConsistencyError("(n+1)-closure is not complete under the degree condition")
    rest = [x for x in range(n) if x != u and x != v]
    cycle = _unwind(mat, added, [z, u, *rest, v])
    i = cycle.index(z)
    path = cycle[i + 1:] + cycle[:i]
    if path[0] != u:
        path.reverse()
    if not is_ham_path(G, path, u, v):
        raise InternalConsistencyError("unwound path is not Hamiltonian")
    return path


def prop9_violation(G: Graph, ell: int) -> int | None:
    """First ``j`` violating the multi-path degree hypothesis, ``-1`` for n too small."""
    n = G.n
    if n < 4 * ell:
        return -1
    hi = (n + 4 * (ell - 1)) // 2
    return _first_psi_violation(degree_profile(G), 2 * ell, hi, 2 * ell - 1)


def prop9_condition(G: Graph, ell: int) -> bool:
    return prop9_violation(G, ell) is None


def edge_disjoint_ham_paths(
    G: Graph, req: Sequence[tuple[int, int]], fallback: bool = False
) -> list[list[int]]:
    """Pairwise edge-disjoint Hamiltonian paths joining each requested pair.

    Paths are extracted last pair first, each from the graph left after
    deleting the previously extracted paths.
    """
    ell = len(req)
    if ell == 0:
        return []
    for a, b in req:
        if a == b or not (0 <= a < G.n and 0 <= b < G.n):
            raise DomainError(f"bad endpoint pair ({a},{b})")
    bad = prop9_violation(G, ell)
    if bad is not None and not fallback:
        if bad == -1:
            raise NotApplicableError(f"need n >= {4 * ell}", violation=("n", G.n))
        raise NotApplicableError(f"degree hypothesis fails at j={bad}", violation=("j", bad))
    paths: list[list[int]] = [[] for _ in range(ell)]
    H = G
    for i in range(ell - 1, -1, -1):
        a, b = req[i]
        use_fallback = fallback and (bad is not None or not ckk_condition(H))
        if use_fallback:
            p = find_ham_path(H, a, b)
            if p is None:
                raise NotApplicableError(f"no Hamiltonian path for pair {i} in the residual graph")
        else:
            p = ham_path_between(H, a, b)
        paths[i] = p
        H = _remove(H, path_edges(p))
    return paths


def _remove(G: Graph, F: Sequence[Edge]) -> Graph:
    adj = list(G.adj)
    for u, v in F:
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
    return Graph(G.n, tuple(adj))


def lemma_h_applicable(G: Graph, V1, V2, ell: int) -> bool:
    """Degree bounds that make every endpoint request realisable.

    ``V1`` vertices need degree >= n/2 + 2*ell - 1 and ``V2`` vertices need
    degree >= |V2| + 2*ell.
    """
    s1, s2 = set(V1), set(V2)
    if s1 & s2 or s1 | s2 != set(range(G.n)):
        raise DomainError("V1 and V2 must partition the vertex set")
    if not s1:
        return False
    # 2*deg >= n + 4*ell - 2 avoids half-integers
    if any(2 * G.degree(v) < G.n + 4 * ell - 2 for v in s1):
        return False
    return all(G.degree(v) >= len(s2) + 2 * ell for v in s2)


def lemma_h_partition(G: Graph, ell: int) -> tuple[list[int], list[int]] | None:
    """A partition satisfying `lemma_h_applicable`, if one exists.

    Vertices of degree below the V1 threshold must go to V2; moving more
    vertices into V2 only raises its bar, so the forced choice is optimal.
    """
    low = [v for v in range(G.n) if 2 * G.degree(v) < G.n + 4 * ell - 2]
    high = [v for v in range(G.n) if 2 * G.degree(v) >= G.n + 4 * ell - 2]
    if lemma_h_applicable(G, high, low, ell):
        return high, low
    return None


# --------------------------------------------------------------------------
# search helpers (fallback / oracle use)


def find_ham_cycle(
    G: Graph,
    seed: int = 0,
    budget: int = SEARCH_BUDGET,
    forbidden: set[Edge] | None = None,
) -> list[int] | None:
    """Hamiltonian cycle by closure, then rotation-extension, then backtracking.

    ``budget`` bounds the total number of search steps. Returns None when
    the budget runs out without success.
    """
    if forbidden:
        G = _remove(G, [e for e in forbidden if G.has_edge(*e)])
    n = G.n
    if n < 3 or G.min_degree < 2:
        return None
    try:
        return ham_cycle_dirac(G)
    except NotApplicableError:
        pass
    cyc = _posa(G, XorShift64Star(seed), budget // 2)
    if cyc is not None:
        return cyc
    return _backtrack_cycle(G, budget // 2)


def _posa(G: Graph, rng: XorShift64Star, budget: int) -> list[int] | None:
    n = G.n
    adj = [list(bits(a)) for a in G.adj]
    steps = 0
    restarts = 0
    while steps < budget and restarts < 50:
        restarts += 1
        start = rng.below(n)
        path = [start]
        pos = {start: 0}
        while steps < budget:
            steps += 1
            end = path[-1]
            free = [w for w in adj[end] if w not in pos]
            if free:
                w = free[rng.below(len(free))]
                pos[w] = len(path)
                path.append(w)
                continue
            if len(path) == n and G.has_edge(path[0], end):
                return path
            # rotate around a random on-path neighbour of the endpoint
            cands = [w for w in adj[end] if pos[w] < len(path) - 2]
            if not cands:
                break
            w = cands[rng.below(len(cands))]
            i = pos[w]
            path[i + 1:] = path[:i:-1]
            for j in range(i + 1, len(path)):
                pos[path[j]] = j
            if steps % (4 * n) == 0 and len(path) < n:
                # occasional flip of orientation to extend from the other end
                path.reverse()
                for j, x in enumerate(path):
                    pos[x] = j
    return None


def _backtrack_cycle(G: Graph, budget: int) -> list[int] | None:
    n = G.n
    start = min(range(n), key=lambda v: (G.degree(v), v))
    res = _backtrack(G, start, None, budget, close=True)
    return res


def find_ham_path(G: Graph, u: int, v: int, budget: int = SEARCH_BUDGET) -> list[int] | None:
    """Backtracking search for a Hamiltonian ``u``-``v`` path."""
    if G.n == 1:
        return [u] if u == v else None
    if u == v:
        return None
    return _backtrack(G, u, v, budget, close=False)


def _backtrack(G: Graph, start: int, end: int | None, budget: int, close: bool) -> list[int] | None:
    n = G.n
    full = (1 << n) - 1
    adj = G.adj
    target = start if close else end
    path = [start]
    visited = 1 << start
    counter = [0]

    def feasible(vis: int, cur: int) -> bool:
        # every unvisited vertex (other than the target) needs two usable neighbours
        rest = full & ~vis
        for w in bits(rest):
            avail = adj[w] & (rest | (1 << cur) | (1 << target))
            need = 1 if w == target else 2
            if (avail & ~(1 << w)).bit_count() < need:
                return False
        return True

    def rec(cur: int) -> bool:
        counter[0] += 1
        if counter[0] > budget:
            raise _Budget
        if visited == full:
            return G.has_edge(cur, start) if close else cur == end
        cand = adj[cur] & ~visited
        if not close and end is not None:
            if visited | (1 << end) != full:
                cand &= ~(1 << end)
        order = sorted(bits(cand), key=lambda w: ((adj[w] & ~visited).bit_count(), w))
        for w in order:
            path.append(w)
            nonlocal_visit(w, True)
            if feasible(visited, w) and rec(w):
                return True
            nonlocal_visit(w, False)
            path.pop()
        return False

    def nonlocal_visit(w: int, on: bool) -> None:
        nonlocal visited
        if on:
            visited |= 1 << w
        else:
            visited &= ~(1 << w)

    try:
        return path if rec(start) else None
    except _Budget:
        return None


class _Budget(Exception):
    pass


def iter_ham_cycles(G: Graph, limit: int | None = None) -> Iterator[list[int]]:
    """All Hamiltonian cycles in canonical form (starts at 0, second < last)."""
    n = G.n
    if n < 3:
        return
    adj = G.adj
    full = (1 << n) - 1
    path = [0]
    emitted = 0

    def rec(cur: int, visited: int):
        if visited == full:
            if adj[cur] & 1 and path[1] < path[-1]:
                yield list(path)
            return
        for w in bits(adj[cur] & ~visited):
            path.append(w)
            yield from rec(w, visited | (1 << w))
            path.pop()

    for cyc in rec(0, 1):
        yield cyc
        emitted += 1
        if limit is not None and emitted >= limit:
            return


def extract_disjoint_cycles(G: Graph, ell: int, seed: int = 0, budget: int = SEARCH_BUDGET) -> list[list[int]]:
    """Greedily take ``ell`` edge-disjoint Hamiltonian cycles.

    Each cycle comes from the graph left after deleting the earlier ones.
    Raises `ExtractionFailure` when a stage exhausts its search budget.
    """
    cycles: list[list[int]] = []
    H = G
    rng = XorShift64Star(seed)
    for i in range(ell):
        cyc = find_ham_cycle(H, seed=rng.next_u64(), budget=budget)
        if cyc is None:
            raise ExtractionFailure(f"could not extract Hamiltonian cycle {i + 1} of {ell}")
        cycles.append(cyc)
        H = _remove(H, cycle_edges(cyc))
    return cycles


__all__ = [
    "ClosureTrace",
    "closure",
    "ham_cycle_dirac",
    "ckk_condition",
    "ham_path_between",
    "prop9_condition",
    "prop9_violation",
    "edge_disjoint_ham_paths",
    "lemma_h_applicable",
    "lemma_h_partition",
    "is_ham_cycle",
    "is_ham_path",
    "cycle_edges",
    "path_edges",
    "find_ham_cycle",
    "find_ham_path",
    "iter_ham_cycles",
    "extract_disjoint_cycles",
]
