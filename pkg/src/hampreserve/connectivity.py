"""Vertex connectivity, minimum vertex cuts and disjoint path systems.

Everything runs on unit-capacity flow networks with vertex splitting:
vertex ``v`` becomes ``in(v) = 2v`` and ``out(v) = 2v+1`` joined by a
capacity-one arc, and each edge ``uv`` becomes the arcs ``out(u)->in(v)``
and ``out(v)->in(u)`` with unbounded capacity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import DomainError, InfeasibleError, NoCutError
from .graph import Graph, bits, components, mask_of

BIG = 1 << 30


class FlowNetwork:
    """Residual network in CSR form, built once and reset between flows."""

    def __init__(self, num_nodes: int):
        self.num_nodes = num_nodes
        self._tails: list[int] = []
        self._heads: list[int] = []
        self._caps: list[int] = []
        self._frozen = False

    def add_arc(self, u: int, v: int, cap: int) -> int:
        """Add ``u->v`` and its zero-capacity reverse; returns the arc id."""
        arc = len(self._tails)
        self._tails += [u, v]
        self._heads += [v, u]
        self._caps += [cap, 0]
        return arc

    def freeze(self) -> None:
        tails = np.asarray(self._tails, dtype=np.int64)
        order = np.argsort(tails, kind="stable")
        inv = np.empty_like(order)
        inv[order] = np.arange(len(order))
        self.order = order  # CSR position -> arc id
        self.inv = inv  # arc id -> CSR position
        self.heads = np.asarray(self._heads, dtype=np.int64)[order]
        pair = np.arange(len(order)) ^ 1
        self.rev = inv[pair[order]]
        self.base_cap = np.asarray(self._caps, dtype=np.int64)[order]
        counts = np.bincount(tails, minlength=self.num_nodes)
        self.offsets = np.zeros(self.num_nodes + 1, dtype=np.int64)
        np.cumsum(counts, out=self.offsets[1:])
        self.cap = self.base_cap.copy()
        self.seen = np.zeros(self.num_nodes, dtype=np.uint8)
        self.parent = np.zeros(self.num_nodes, dtype=np.int64)
        self.queue = np.zeros(self.num_nodes, dtype=np.int64)
        self._frozen = True

    def reset(self) -> None:
        np.copyto(self.cap, self.base_cap)

    def set_base_cap(self, arc: int, cap: int) -> None:
        self.base_cap[self.inv[arc]] = cap

    def max_flow(self, s: int, t: int, limit: int = BIG) -> int:
        if not self._frozen:
            self.freeze()
        return int(kernels.augment_flow(self.offsets, self.heads, self.rev, self.cap,
                                        s, t, limit, self.seen, self.parent, self.queue))

    def flow_on(self, arc: int) -> int:
        pos = self.inv[arc]
        return int(self.base_cap[pos] - self.cap[pos])

    def reachable(self) -> np.ndarray:
        return self.seen.astype(bool)


def _split_network(G: Graph) -> FlowNetwork:
    net = FlowNetwork(2 * G.n)
    for v in range(G.n):
        net.add_arc(2 * v, 2 * v + 1, 1)
    for u, v in G.edges():
        net.add_arc(2 * u + 1, 2 * v, BIG)
        net.add_arc(2 * v + 1, 2 * u, BIG)
    net.freeze()
    return net


def _cut_from_reach(reach: np.ndarray, n: int) -> list[int]:
    return [v for v in range(n) if reach[2 * v] and not reach[2 * v + 1]]


# --------------------------------------------------------------------------
# connectivity


@dataclass(frozen=True)
class VertexCut:
    W: tuple[int, ...]
    sideA: tuple[int, ...]
    sideB: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"W": list(self.W), "sideA": list(self.sideA), "sideB": list(self.sideB)}


def _connectivity(G: Graph, cap: int | None = None) -> tuple[int, list[int] | None]:
    """``(min(kappa, cap), witness cut)``; the witness is None when no cut below cap."""
    n = G.n
    if n < 2:
        raise DomainError("connectivity needs at least 2 vertices")
    comps = components(G)
    if len(comps) > 1:
        return 0, []
    if G.is_complete():
        return (n - 1 if cap is None else min(n - 1, cap)), None
    best = min(G.min_degree, n - 1)
    witness: list[int] | None = None
    vmin = min(range(n), key=lambda v: (G.degree(v), v))
    if cap is not None and cap < best:
        best = cap
    else:
        witness = G.neighbors(vmin)
    order = sorted(range(n), key=lambda v: (G.degree(v), v))
    net = None
    adj = G.adj
    i = 0
    while i <= best and i < n:
        s = order[i]
        later = mask_of(order[i + 1:])
        for t in bits(later & ~adj[s]):
            if (adj[s] & adj[t]).bit_count() >= best:
                continue
            if net is None:
                net = _split_network(G)
            net.reset()
            f = net.max_flow(2 * s + 1, 2 * t, best)
            if f < best:
                best = f
                witness = _cut_from_reach(net.reachable(), n)
        i += 1
    return best, witness


def kappa(G: Graph) -> int:
    """Exact vertex connectivity (n-1 for complete graphs)."""
    return _connectivity(G)[0]


def kappa_capped(G: Graph, cap: int) -> int:
    """``min(kappa(G), cap)``, cheaper than the exact value for small caps."""
    return _connectivity(G, cap)[0]


def is_k_connected(G: Graph, k: int) -> bool:
    if k <= 0:
        return True
    if G.n < k + 1:
        return False
    return _connectivity(G, k)[0] >= k


def _sides(G: Graph, W: Sequence[int]) -> tuple[list[int], list[int]]:
    wmask = mask_of(W)
    comps = components(G, ((1 << G.n) - 1) & ~wmask)
    if len(comps) < 2:
        raise DomainError("vertex set is not a separator")
    comps.sort(key=lambda c: (len(c), c[0]))
    a = comps[0]
    b = sorted(v for c in comps[1:] for v in c)
    return a, b


def min_vertex_cut(G: Graph) -> VertexCut:
    """Minimum vertex cut with a two-sided witness (smallest component first)."""
    if G.n < 3:
        raise DomainError("minimum vertex cut needs n >= 3")
    if G.is_complete():
        raise NoCutError("complete graphs have no vertex cut")
    value, W = _connectivity(G)
    assert W is not None and len(W) == value
    a, b = _sides(G, W)
    return VertexCut(tuple(sorted(W)), tuple(a), tuple(b))


def separation_components(G: Graph, W: Iterable[int]) -> list[list[int]]:
    wmask = mask_of(W)
    return components(G, ((1 << G.n) - 1) & ~wmask)


def ch_sufficient(G: Graph, k: int) -> bool:
    """Minimum-degree sufficient condition for k-connectivity."""
    if G.n < k + 1:
        raise DomainError("need n >= k + 1")
    return 2 * G.min_degree >= G.n + k - 2


# --------------------------------------------------------------------------
# disjoint paths


@dataclass(frozen=True)
class PathSystem:
    paths: tuple[tuple[int, ...], ...]

    @property
    def internal(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(p[1:-1]) for p in self.paths)

    def all_internal(self) -> set[int]:
        return {v for p in self.paths for v in p[1:-1]}

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for p in self.paths:
            out += [(min(a, b), max(a, b)) for a, b in zip(p, p[1:])]
        return out

    def __len__(self) -> int:
        return len(self.paths)

    def to_list(self) -> list[list[int]]:
        return [list(p) for p in self.paths]


def check_path_system(G: Graph, ps: PathSystem, A, B) -> list[str]:
    """Problems with ``ps`` as an A-B system in G (empty list when valid)."""
    A, B = set(A), set(B)
    issues = []
    used: set[int] = set()
    for idx, p in enumerate(ps.paths):
        if len(set(p)) != len(p):
            issues.append(f"path {idx} repeats a vertex")
        if used & set(p):
            issues.append(f"path {idx} meets an earlier path")
        used |= set(p)
        if p[0] not in A or p[-1] not in B:
            issues.append(f"path {idx} does not run from A to B")
        for a, b in zip(p, p[1:]):
            if not G.has_edge(a, b):
                issues.append(f"path {idx} uses non-edge ({a},{b})")
    return issues


def disjoint_paths(G: Graph, A: Iterable[int], B: Iterable[int], k: int) -> PathSystem:
    """``k`` vertex-disjoint A-B paths.

    Each path meets A only at its start and B only at its end. A singleton
    terminal set is the classical two-vertex case: its vertex is shared by
    all paths, which are then internally disjoint.
    """
    A, B = sorted(set(A)), sorted(set(B))
    if set(A) & set(B):
        raise DomainError("A and B must be disjoint")
    if not A or not B:
        raise DomainError("terminal sets must be nonempty")
    if k <= 0:
        return PathSystem(())
    n = G.n
    S, T = 2 * n, 2 * n + 1
    shared = ({A[0]} if len(A) == 1 else set()) | ({B[0]} if len(B) == 1 else set())
    net = FlowNetwork(2 * n + 2)
    for v in range(n):
        net.add_arc(2 * v, 2 * v + 1, k if v in shared else 1)
    edge_arcs = []
    for u, v in G.edges():
        c = 1 if u in shared and v in shared else BIG
        edge_arcs.append((net.add_arc(2 * u + 1, 2 * v, c), u, v))
        edge_arcs.append((net.add_arc(2 * v + 1, 2 * u, c), v, u))
    for a in A:
        net.add_arc(S, 2 * a, BIG)
    for b in B:
        net.add_arc(2 * b + 1, T, BIG)
    net.freeze()
    f = net.max_flow(S, T, k)
    if f < k:
        cut = _cut_from_reach(net.reachable(), n)
        raise InfeasibleError(f"only {f} disjoint paths exist (need {k})", cut=cut)
    succ: dict[int, list[int]] = {}
    flows = {(u, v) for arc, u, v in edge_arcs if net.flow_on(arc) > 0}
    for u, v in sorted(flows):
        if (v, u) in flows:  # opposing units cancel
            continue
        succ.setdefault(u, []).append(v)
    Aset, Bset = set(A), set(B)
    inflow = {v for vs in succ.values() for v in vs}
    paths = []
    # split arcs were added first, so vertex v's split arc has id 2*v
    for a in A:
        units = net.flow_on(2 * a)
        if a not in shared and a in inflow:
            continue
        for _ in range(units):
            if not succ.get(a):
                break
            p = [a]
            while p[-1] not in Bset:
                nxt = succ.get(p[-1])
                if not nxt:
                    break
                p.append(nxt.pop())
            first_b = next(i for i, x in enumerate(p) if x in Bset)
            p = p[: first_b + 1]
            last_a = max(i for i, x in enumerate(p) if x in Aset)
            paths.append(tuple(p[last_a:]))
    paths.sort()
    if len(paths) < k:
        raise InfeasibleError("flow decomposition produced too few paths")
    return PathSystem(tuple(paths[:k]))


# --------------------------------------------------------------------------
# bridge systems covering a cut


@dataclass
class _Unit:
    entry: int
    exit: int

    @property
    def members(self) -> tuple[int, ...]:
        return (self.entry,) if self.entry == self.exit else (self.entry, self.exit)


def _try_units(G: Graph, A: list[int], B: list[int], units: list[_Unit], k: int):
    """Lower-bound flow: every unit carries one path, k paths in total."""
    nA, nB, nU = len(A), len(B), len(units)
    # nodes: S, T, S', T', then A, B, unit-in, unit-out
    S, T, S2, T2 = 0, 1, 2, 3
    a0 = 4
    b0 = a0 + nA
    ui0 = b0 + nB
    uo0 = ui0 + nU
    net = FlowNetwork(uo0 + nU)
    amask, bmask = mask_of(A), mask_of(B)
    aidx = {a: a0 + i for i, a in enumerate(A)}
    bidx = {b: b0 + i for i, b in enumerate(B)}
    for a in A:
        net.add_arc(S, aidx[a], 1)
    for b in B:
        net.add_arc(bidx[b], T, 1)
    direct = []
    for a in A:
        for b in bits(G.adj[a] & bmask):
            direct.append((net.add_arc(aidx[a], bidx[b], 1), a, b))
    into, outof = [], []
    for j, un in enumerate(units):
        for a in bits(G.adj[un.entry] & amask):
            into.append((net.add_arc(aidx[a], ui0 + j, 1), a, j))
        for b in bits(G.adj[un.exit] & bmask):
            outof.append((net.add_arc(uo0 + j, bidx[b], 1), j, b))
        net.add_arc(ui0 + j, T2, 1)
        net.add_arc(S2, uo0 + j, 1)
    net.add_arc(T, T2, k)
    net.add_arc(S2, S, k)
    net.freeze()
    need = nU + k
    if net.max_flow(S2, T2, need) < need:
        return None
    start = {j: a for arc, a, j in into if net.flow_on(arc) > 0}
    end = {j: b for arc, j, b in outof if net.flow_on(arc) > 0}
    paths = [(start[j], *un.members, end[j]) for j, un in enumerate(units)]
    paths += [(a, b) for arc, a, b in direct if net.flow_on(arc) > 0]
    return paths


def covering_bridge_flow(
    G: Graph,
    A: Iterable[int],
    B: Iterable[int],
    W: Iterable[int],
    k: int,
    heavy_entry: Iterable[int] | None = None,
    max_pairs: int | None = None,
    enumeration_cap: int = 10**4,
) -> PathSystem:
    """``k`` disjoint A-B paths whose internal vertices are exactly ``W``.

    Every path has order 2, 3 or 4. Order-4 paths ``a, w1, w2, b`` are
    tried with the fewest such paths first; pairs whose first vertex lies
    in ``heavy_entry`` and second vertex outside it are preferred, which
    is the orientation the cycle construction relies on. ``max_pairs=0``
    demands order-3 paths through every cut vertex.
    """
    A, B, W = sorted(set(A)), sorted(set(B)), sorted(set(W))
    if set(A) & set(B) or set(A) & set(W) or set(B) & set(W):
        raise DomainError("A, B and W must be pairwise disjoint")
    if k < len(W) / 2:
        raise InfeasibleError(f"{len(W)} cut vertices cannot be covered by {k} paths")
    heavy = set(W) if heavy_entry is None else set(heavy_entry)
    amask, bmask = mask_of(A), mask_of(B)
    can_enter = {w for w in W if G.adj[w] & amask}
    can_exit = {w for w in W if G.adj[w] & bmask}
    pairs = [(x, y) for x in W for y in W if x != y and G.has_edge(x, y)
             and x in can_enter and y in can_exit]
    preferred = [(x, y) for x, y in pairs if x in heavy and y not in heavy]
    others = [pr for pr in pairs if pr not in preferred]
    lo = max(0, len(W) - k)
    hi = len(W) // 2 if max_pairs is None else min(max_pairs, len(W) // 2)
    tried = 0
    for size in range(lo, hi + 1):
        for pool in (preferred, preferred + others):
            for M in itertools.combinations(pool, size):
                flat = [v for pr in M for v in pr]
                if len(set(flat)) != len(flat):
                    continue
                if pool is not preferred and all(pr in preferred for pr in M) and preferred:
                    continue  # already tried
                tried += 1
                if tried > enumeration_cap:
                    raise InfeasibleError("bridge enumeration cap reached")
                matched = set(flat)
                units = [_Unit(x, y) for x, y in M]
                units += [_Unit(w, w) for w in W if w not in matched]
                if any(u.entry not in can_enter or u.exit not in can_exit for u in units):
                    continue
                paths = _try_units(G, A, B, units, k)
                if paths is not None:
                    return PathSystem(tuple(sorted(paths, key=lambda p: (len(p), p))))
    raise InfeasibleError("no path system covers the cut with the requested orders")


def reference_bridge(
    G: Graph, A: Iterable[int], B: Iterable[int], W: Iterable[int], k: int
) -> PathSystem:
    """Iterative replace/modify construction of a covering bridge system.

    Starts from ``k`` disjoint A-B paths, keeps their A-B subpaths, then
    inserts uncovered cut vertices one by one as order-3 paths, rerouting
    the path whose endpoint is displaced. Gives up after ``2*k*|W|``
    modification steps.
    """
    A, B, W = sorted(set(A)), sorted(set(B)), sorted(set(W))
    Aset, Bset, Wset = set(A), set(B), set(W)
    base = disjoint_paths(G, A, B, k)
    paths: list[list[int]] = []
    for p in base.paths:
        # the first A-B subpath that stays inside A, W, B
        sub = [p[0]]
        for x in p[1:]:
            if x in Aset:
                sub = [x]
            elif x in Wset or x in Bset:
                sub.append(x)
                if x in Bset:
                    break
            else:
                sub = []
                break
        if not sub or sub[-1] not in Bset:
            raise InfeasibleError("base path leaves A, W, B")
        paths.append(sub)

    def nbr(v: int, side: set[int]) -> list[int]:
        return [x for x in bits(G.adj[v]) if x in side]

    # drop W-internals beyond two per path by shortcutting through heavy vertices
    for idx, p in enumerate(paths):
        inner = p[1:-1]
        if len(inner) <= 2:
            continue
        used = {x for q in paths for x in q}
        fixed = False
        for j, w in enumerate(inner):
            ua = [x for x in nbr(w, Aset) if x not in used]
            vb = [x for x in nbr(w, Bset) if x not in used]
            if ua and vb:
                paths[idx] = [ua[0], w, vb[0]]
                fixed = True
                break
        if not fixed:
            raise InfeasibleError("cannot shorten a long bridge path")

    limit = 2 * k * max(1, len(W))
    steps = 0
    while True:
        covered = {x for p in paths for x in p[1:-1]}
        missing = [w for w in W if w not in covered]
        if not missing:
            break
        steps += 1
        if steps > limit:
            raise InfeasibleError("reference bridge iteration cap reached")
        w = missing[0]
        used = {x for p in paths for x in p}
        ua = nbr(w, Aset)
        vb = nbr(w, Bset)
        if not ua or not vb:
            raise InfeasibleError(f"cut vertex {w} lacks a neighbour on one side")
        free_a = [x for x in ua if x not in used]
        free_b = [x for x in vb if x not in used]
        direct = [i for i, p in enumerate(paths) if len(p) == 2]
        if free_a and free_b and direct:
            paths[direct[0]] = [free_a[0], w, free_b[0]]
            continue
        placed = False
        for a in (free_a or ua):
            for b in (free_b or vb):
                blockers = [i for i, p in enumerate(paths) if a in p or b in p]
                removable = [i for i in blockers if len(paths[i]) == 2]
                if len(blockers) == len(removable) and len(blockers) <= 1:
                    if blockers:
                        paths[blockers[0]] = [a, w, b]
                    elif direct:
                        paths[direct[0]] = [a, w, b]
                    else:
                        continue
                    placed = True
                    break
                # reroute a covering path's endpoint to a free neighbour
                ok = True
                new_paths = [list(p) for p in paths]
                for i in blockers:
                    q = new_paths[i]
                    taken = {x for r in new_paths for x in r} | {a, b, w}
                    if q[0] in (a, b) and len(q) > 2:
                        alt = [x for x in nbr(q[1], Aset) if x not in taken]
                        if not alt:
                            ok = False
                            break
                        q[0] = alt[0]
                    elif q[-1] in (a, b) and len(q) > 2:
                        alt = [x for x in nbr(q[-2], Bset) if x not in taken]
                        if not alt:
                            ok = False
                            break
                        q[-1] = alt[0]
                    else:
                        ok = False
                        break
                if ok:
                    direct2 = [i for i, p in enumerate(new_paths) if len(p) == 2]
                    if not direct2:
                        continue
                    new_paths[direct2[0]] = [a, w, b]
                    paths = new_paths
                    placed = True
                    break
            if placed:
                break
        if not placed:
            raise InfeasibleError(f"reference construction cannot place cut vertex {w}")
    return PathSystem(tuple(sorted((tuple(p) for p in paths), key=lambda p: (len(p), p))))


__all__ = [
    "BIG",
    "FlowNetwork",
    "VertexCut",
    "PathSystem",
    "kappa",
    "kappa_capped",
    "is_k_connected",
    "min_vertex_cut",
    "separation_components",
    "ch_sufficient",
    "disjoint_paths",
    "check_path_system",
    "covering_bridge_flow",
    "reference_bridge",
]
