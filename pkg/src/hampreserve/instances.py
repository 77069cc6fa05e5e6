"""Seeded instance generators.

All randomness comes from `XorShift64Star`, so the same family,
parameters and seed give a byte-identical edge list on every platform.
Each generator re-checks the properties it advertises before returning.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .connectivity import kappa, kappa_capped
from .errors import DomainError, InternalConsistencyError
from .graph import Graph, mask_of
from .hamilton import find_ham_cycle, is_ham_cycle, lemma_h_applicable
from .rng import XorShift64Star

FAMILIES = ("dirac", "barbell", "ch-tight", "lemma-h")
MAX_ATTEMPTS = 32


@dataclass(frozen=True)
class InstanceSpec:
    family: str
    n: int
    k: int = 0
    ell: int = 0
    seed: int = 0
    surplus: int = 0
    rich: bool = False

    def header(self) -> str:
        parts = [f"{key}={val}" for key, val in asdict(self).items()]
        return "hampreserve instance " + " ".join(parts)

    def generate(self) -> Graph:
        if self.family == "dirac":
            return gen_dirac(self.n, self.seed, self.surplus)
        if self.family == "barbell":
            return gen_barbell_dirac(self.n, self.k, self.seed, rich=self.rich)
        if self.family == "ch-tight":
            return gen_ch_tightness(self.n, self.k)
        if self.family == "lemma-h":
            return gen_lemma_h(self.n, self.ell, self.seed)[0]
        raise DomainError(f"unknown family {self.family!r}; known: {', '.join(FAMILIES)}")


@dataclass(frozen=True)
class Planted:
    """Labelled structure of a barbell instance (after relabelling)."""

    W: tuple[int, ...]
    G1: tuple[int, ...]
    G2: tuple[int, ...]
    hubs: tuple[int, ...] = ()
    light: tuple[tuple[int, int], ...] = field(default=())  # (cut vertex, side index)


class _Builder:
    """Mutable adjacency sets with degree floors, single owner."""

    def __init__(self, n: int):
        self.n = n
        self.nb = [set() for _ in range(n)]

    def join(self, u: int, v: int) -> None:
        if u != v:
            self.nb[u].add(v)
            self.nb[v].add(u)

    def cut(self, u: int, v: int) -> None:
        self.nb[u].discard(v)
        self.nb[v].discard(u)

    def deg(self, v: int) -> int:
        return len(self.nb[v])

    def graph(self, perm: list[int] | None = None) -> Graph:
        p = perm or list(range(self.n))
        return Graph.from_edges(self.n, [(p[u], p[v]) for u in range(self.n) for v in self.nb[u] if u < v])


def _thin(b: _Builder, pool: list[tuple[int, int]], floor: list[int], rng: XorShift64Star, keep=None) -> None:
    """Drop edges of ``pool`` in random order while both ends stay above their floor."""
    rng.shuffle(pool)
    for u, v in pool:
        if v in b.nb[u] and b.deg(u) > floor[u] and b.deg(v) > floor[v]:
            if keep is not None and not keep(u, v):
                continue
            b.cut(u, v)


def _half(n: int) -> int:
    return (n + 1) // 2


def gen_dirac(n: int, seed: int = 0, surplus: int = 0) -> Graph:
    """Random graph with minimum degree at least ``ceil(n/2) + surplus``.

    Edges of ``K_n`` are visited in seeded order and removed when both
    ends stay above a per-vertex floor drawn between the target and a
    quarter of the remaining room.
    """
    if n < 3:
        raise DomainError("need n >= 3")
    target = _half(n) + surplus
    if surplus < 0 or target > n - 1:
        raise DomainError(f"minimum degree {target} is infeasible on {n} vertices")
    rng = XorShift64Star(seed)
    room = (n - 1 - target) // 4
    floor = [target + (rng.below(room + 1) if room else 0) for _ in range(n)]
    b = _Builder(n)
    for u in range(n):
        for v in range(u + 1, n):
            b.join(u, v)
    _thin(b, [(u, v) for u in range(n) for v in range(u + 1, n)], floor, rng)
    G = b.graph()
    if G.min_degree < target:
        raise InternalConsistencyError("generated graph misses its degree floor")
    return G


def _barbell_sizes(n: int, k: int, hubs: int) -> tuple[int, int] | None:
    """Side orders ``a <= b`` with ``a + b = n - (k - hubs)`` meeting the floors."""
    w = k - hubs
    f = _half(n)
    rest = n - w
    for a in range(rest // 2, 0, -1):
        b = rest - a
        # G1: a-1 + w + hubs, G2 (non-hub): b-1 + w, hubs sit in G2
        if a - 1 + k >= f and b - 1 + w >= f and b > hubs:
            return a, b
    return None


def gen_barbell_planted(n: int, k: int, seed: int = 0, rich: bool = False) -> tuple[Graph, Planted]:
    """Barbell instance plus its planted structure.

    Two dense sides joined only through a cut ``W`` (crossing-poor) or
    through ``W`` plus hub vertices of the larger side adjacent to the
    whole smaller side (crossing-rich). The minimum cut, of order ``k``,
    is ``W`` together with the hubs. Where the degree floor leaves room,
    one cut vertex is thinned to two neighbours on one side.
    """
    if k < 1 or 2 * k >= n:
        raise DomainError("need 1 <= k < n/2")
    if n < 4 * k + 8:
        raise DomainError(f"need n >= 4k + 8 = {4 * k + 8}")
    hubs = 0
    sizes = None
    if rich:
        for h in range(max(1, k // 2), 0, -1):
            sizes = _barbell_sizes(n, k, h)
            if sizes is not None:
                hubs = h
                break
    else:
        sizes = _barbell_sizes(n, k, 0)
    if sizes is None:
        raise DomainError(f"no {'rich' if rich else 'poor'} barbell with n={n}, k={k} meets the degree floor")
    a, b = sizes
    w = k - hubs
    f = _half(n)
    rng = XorShift64Star(seed)
    for attempt in range(MAX_ATTEMPTS):
        r = rng.fork(attempt)
        W = list(range(w))
        S1 = list(range(w, w + a))
        S2 = list(range(w + a, n))
        H = S2[:hubs]
        bld = _Builder(n)
        for grp in (W, S1, S2):
            for i, u in enumerate(grp):
                for v in grp[i + 1:]:
                    bld.join(u, v)
        for x in W:
            for y in S1 + S2:
                bld.join(x, y)
        for h in H:
            for y in S1:
                bld.join(h, y)
        floor = [f] * n
        light = []
        # thin one cut vertex on a side with slack
        for side_idx, side in ((1, S1), (2, S2)):
            if not W:
                break
            x = W[r.below(len(W))]
            before = [y for y in side if x in bld.nb[y]]
            pool = [(x, y) for y in side]
            _thin(bld, pool, floor, r, keep=lambda u, v, x=x, side=side: sum(1 for y in side if y in bld.nb[x]) > 2)
            left = sum(1 for y in side if y in bld.nb[x])
            if left <= 2 < len(before):
                light.append((x, side_idx))
                break
            for y in before:
                bld.join(x, y)
        inner = [(u, v) for grp in (S1, S2) for i, u in enumerate(grp) for v in grp[i + 1:] if u not in H or v not in H]
        _thin(bld, inner, floor, r)
        cross = [(h, y) for h in H for y in S1]
        _thin(bld, cross, floor, r, keep=lambda u, v: True)
        perm = list(range(n))
        r.shuffle(perm)
        G = bld.graph(perm)
        if G.min_degree < f:
            continue
        if kappa_capped(G, k + 1) != k:
            continue
        planted = Planted(
            W=tuple(sorted(perm[x] for x in W + H)),
            G1=tuple(sorted(perm[x] for x in S1)),
            G2=tuple(sorted(perm[x] for x in S2 if x not in H)),
            hubs=tuple(sorted(perm[x] for x in H)),
            light=tuple((perm[x], s) for x, s in light),
        )
        return G, planted
    raise InternalConsistencyError("barbell generation did not reach connectivity k")


def gen_barbell_dirac(n: int, k: int, seed: int = 0, rich: bool = False) -> Graph:
    return gen_barbell_planted(n, k, seed, rich)[0]


def gen_ch_tightness(n: int, k: int) -> Graph:
    """Two cliques of order ``(n+k-1)/2`` sharing ``k-1`` vertices."""
    if (n + k) % 2 == 0:
        raise DomainError("n + k must be odd")
    if k < 1 or n < k + 3:
        raise DomainError("need k >= 1 and n >= k + 3")
    s = (n + k - 1) // 2
    shared = list(range(k - 1))
    A = shared + list(range(k - 1, s))
    B = shared + list(range(s, n))
    edges = set()
    for grp in (A, B):
        for i, u in enumerate(grp):
            for v in grp[i + 1:]:
                edges.add((u, v))
    G = Graph.from_edges(n, sorted(edges))
    if 2 * G.min_degree != n + k - 3:
        raise InternalConsistencyError("tightness graph has the wrong minimum degree")
    if kappa(G) != k - 1:
        raise InternalConsistencyError("tightness graph has the wrong connectivity")
    return G


def gen_lemma_h(n: int, ell: int, seed: int = 0) -> tuple[Graph, list[int], list[int], list[tuple[int, int]]]:
    """Graph meeting the two-class degree bounds for ``ell`` paths.

    Returns ``(G, V1, V2, requests)`` with ``ell`` random endpoint pairs.
    """
    if ell < 1 or n < 4 * ell:
        raise DomainError("need ell >= 1 and n >= 4*ell")
    hi_floor = (n + 4 * ell - 1) // 2  # ceil(n/2 + 2*ell - 1)
    if hi_floor > n - 1:
        raise DomainError(f"degree {hi_floor} is infeasible on {n} vertices")
    rng = XorShift64Star(seed)
    for attempt in range(MAX_ATTEMPTS):
        r = rng.fork(attempt)
        tmax = max(0, n // 2 - 2 * ell - 1)
        t = r.below(tmax + 1)
        V2 = sorted(r.sample(range(n), t))
        lows = set(V2)
        floor = [t + 2 * ell if v in lows else hi_floor for v in range(n)]
        b = _Builder(n)
        for u in range(n):
            for v in range(u + 1, n):
                b.join(u, v)
        _thin(b, [(u, v) for u in range(n) for v in range(u + 1, n)], floor, r)
        G = b.graph()
        V1 = [v for v in range(n) if v not in lows]
        if not lemma_h_applicable(G, V1, V2, ell):
            continue
        req = []
        for _ in range(ell):
            u = r.below(n)
            v = r.below(n - 1)
            req.append((u, v if v < u else v + 1))
        return G, V1, V2, req
    raise InternalConsistencyError("could not generate a graph meeting the degree bounds")


def adversarial_cycle(G: Graph, planted: Planted, seed: int = 0) -> list[int] | None:
    """Hamiltonian cycle through both side edges of a thinned cut vertex.

    Removing such a cycle strips the cut vertex of its neighbours on that
    side, so the remainder has a smaller cut. Returns None when no cut
    vertex is thin enough or the search fails.
    """
    for x, side_idx in planted.light:
        side = planted.G1 if side_idx == 1 else planted.G2
        nbrs = [y for y in side if G.has_edge(x, y)]
        if not 1 <= len(nbrs) <= 2:
            continue
        keep = mask_of(nbrs)
        if len(nbrs) == 1:
            others = [y for y in G.neighbors(x) if y not in side]
            if not others:
                continue
            keep |= 1 << others[0]
        adj = list(G.adj)
        for y in G.neighbors(x):
            if not keep >> y & 1:
                adj[x] &= ~(1 << y)
                adj[y] &= ~(1 << x)
        forced = Graph(G.n, tuple(adj))
        cyc = find_ham_cycle(forced, seed=seed)
        if cyc is not None and is_ham_cycle(G, cyc):
            return cyc
    return None


def edge_list_header(spec: InstanceSpec) -> list[str]:
    return [spec.header()]


__all__ = [
    "FAMILIES",
    "InstanceSpec",
    "Planted",
    "gen_dirac",
    "gen_barbell_dirac",
    "gen_barbell_planted",
    "gen_ch_tightness",
    "gen_lemma_h",
    "adversarial_cycle",
    "edge_list_header",
]
