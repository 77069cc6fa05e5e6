"""Connectivity-preserving Hamiltonian cycles.

The pipeline first tries the obvious thing (take a Hamiltonian cycle, or
a few edge-disjoint ones, and check the remainder). When the remainder is
not k-connected the removed subgraph ``H`` exposes a small cut ``W`` of
``G - E(H)`` and the repair machinery runs:

1. separation: the two sides ``G1``, ``G2`` of ``G - E(H) - W``;
2. bridge: ``k`` disjoint ``G1``-``G2`` paths in ``G`` whose internal
   vertices are exactly ``W`` (their edges ``B`` are never used again);
3. budget: split the ``q`` cycles into ``q1`` closed by pairs of crossing
   edges and ``q2`` closed by order-3 paths through two cut vertices;
4. side paths: edge-disjoint Hamiltonian paths inside each side with the
   connector ends as endpoints;
5. assembly: side path + connector + side path + connector.

Every numeric hypothesis is evaluated and logged; below the proven order
bounds the pipeline degrades to search with warnings.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Iterable, Sequence

from .connectivity import (
    PathSystem,
    covering_bridge_flow,
    is_k_connected,
    kappa,
    kappa_capped,
    min_vertex_cut,
    separation_components,
)
from .errors import (
    BoundViolationError,
    DomainError,
    ExceptionalGraphError,
    ExtractionFailure,
    InfeasibleError,
    InternalConsistencyError,
    NoCutError,
    NotApplicableError,
)
from .graph import Edge, Graph, bits, crossing_edges, edge, induced_subgraph, mask_of
from .hamilton import (
    SEARCH_BUDGET,
    cycle_edges,
    edge_disjoint_ham_paths,
    extract_disjoint_cycles,
    find_ham_cycle,
    ham_cycle_dirac,
    is_ham_cycle,
    iter_ham_cycles,
    lemma_h_partition,
)
from .pairs import EdgePair, max_pairs_in_edges

log = logging.getLogger(__name__)

SCHEMA = "preserve-cert/1"
FALLBACK_ENUM_N = 12
FALLBACK_TRIES = 64


# --------------------------------------------------------------------------
# order bounds


def _c(k: int) -> int:
    # ceil((k-2)/k) for k >= 2
    return 0 if k <= 2 else 1


def bound_one(k: int) -> int:
    return 6 * k + 12 - 2 * _c(k)


def bound_many(k: int, ell: int) -> int:
    return max(
        k * ell + max(k * ell, 6 * ell + 2) + 3 * k + 2 * ell - 6,
        6 * k + 20 * ell - 8 - 2 * _c(k),
        math.ceil(Fraction(224 * ell, 5) - 10),
    )


def bound_exact(kap: int, ell: int) -> int:
    return max(2 * kap * ell + kap - 2 * ell + 1, 6 * kap + 8 * ell - 4 - 2 * _c(kap))


def bound_general(k: int, p: int, q: int) -> int:
    return max(
        6 * k + 6 * p + 8 * q - 8 - 2 * _c(k),
        k * q + 3 * k + max((k - 2) * q - 2, 2 * p) + 2 * max(p, q) - 4,
    )


# --------------------------------------------------------------------------
# data


@dataclass(frozen=True)
class SeparationStructure:
    W: tuple[int, ...]
    G1: tuple[int, ...]
    G2: tuple[int, ...]
    p: int

    @property
    def k_prime(self) -> int:
        return len(self.W)

    @property
    def n(self) -> int:
        return len(self.W) + len(self.G1) + len(self.G2)

    def window(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        n, kp, p = self.n, self.k_prime, self.p
        return (Fraction(n, 2) - kp - p + 1, Fraction(n - kp, 2), Fraction(n - kp, 2), Fraction(n, 2) + p - 1)

    def window_ok(self) -> bool:
        lo1, hi1, lo2, hi2 = self.window()
        return lo1 <= len(self.G1) <= hi1 and lo2 <= len(self.G2) <= hi2

    def to_dict(self) -> dict:
        return {
            "W": list(self.W),
            "G1": list(self.G1),
            "G2": list(self.G2),
            "p": self.p,
            "window": [str(x) for x in self.window()],
            "window_ok": self.window_ok(),
        }


@dataclass(frozen=True)
class BridgeSystem:
    paths: tuple[tuple[int, ...], ...]
    W1: tuple[int, ...]
    W2: tuple[int, ...]

    @property
    def B(self) -> list[Edge]:
        return sorted({edge(p[i], p[i + 1]) for p in self.paths for i in range(len(p) - 1)})

    @property
    def k_double_prime(self) -> int:
        return sum(1 for p in self.paths if len(p) > 2)

    @property
    def M_B(self) -> list[Edge]:
        return sorted(edge(*p) for p in self.paths if len(p) == 2)

    def straddles(self) -> bool:
        w1 = set(self.W1)
        return all(p[1] in w1 and p[2] not in w1 for p in self.paths if len(p) == 4)

    def to_dict(self) -> dict:
        return {
            "paths": [list(p) for p in self.paths],
            "W1": list(self.W1),
            "W2": list(self.W2),
            "k_double_prime": self.k_double_prime,
            "straddles": self.straddles(),
        }


Connector = tuple[int, tuple[int, ...], int]  # side-1 end, middle vertices, side-2 end


@dataclass
class CrossingBudget:
    M_H: list[Edge]
    M_B: list[Edge]
    U1: list[int]
    U2: list[int]
    q1: int
    q2: int
    w_star: tuple[int, int] | None = None
    Q1: list[tuple[Connector, Connector]] = field(default_factory=list)
    Q2: list[tuple[Connector, Connector]] = field(default_factory=list)

    def connectors(self) -> list[tuple[Connector, Connector]]:
        return self.Q1 + self.Q2

    def Q2_edges(self) -> list[Edge]:
        out = []
        for c1, c2 in self.Q2:
            for a, mid, b in (c1, c2):
                out += [edge(a, mid[0]), edge(mid[0], b)]
        return sorted(out)

    def to_dict(self) -> dict:
        return {
            "M_H": [list(e) for e in self.M_H],
            "M_B": [list(e) for e in self.M_B],
            "U1": self.U1,
            "U2": self.U2,
            "q1": self.q1,
            "q2": self.q2,
            "w_star": list(self.w_star) if self.w_star else None,
            "Q1": [[[a, list(m), b] for a, m, b in pr] for pr in self.Q1],
            "Q2": [[[a, list(m), b] for a, m, b in pr] for pr in self.Q2],
        }


@dataclass
class PreserveCertificate:
    n: int
    k: int
    ell: int
    exact: bool
    input_hash: str
    cycles: list[list[int]]
    bridge: list[Edge] = field(default_factory=list)
    cut: list[int] = field(default_factory=list)
    kappa_before: int = 0
    kappa_after: int = 0
    stage_log: list[dict] = field(default_factory=list)
    structures: dict = field(default_factory=dict)

    @property
    def warnings(self) -> list[str]:
        return [e["message"] for e in self.stage_log if e.get("stage") == "warning"]

    @property
    def repaired(self) -> bool:
        return any(e.get("stage") == "assemble" for e in self.stage_log)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "n": self.n,
            "k": self.k,
            "ell": self.ell,
            "exact": self.exact,
            "input_hash": self.input_hash,
            "cycles": [list(c) for c in self.cycles],
            "bridge": [list(e) for e in self.bridge],
            "cut": list(self.cut),
            "kappa_before": self.kappa_before,
            "kappa_after": self.kappa_after,
            "stage_log": self.stage_log,
            "structures": self.structures,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, d: dict) -> "PreserveCertificate":
        if d.get("schema") != SCHEMA:
            raise DomainError(f"unknown certificate schema {d.get('schema')!r}")
        return cls(
            n=d["n"],
            k=d["k"],
            ell=d["ell"],
            exact=d["exact"],
            input_hash=d["input_hash"],
            cycles=[list(c) for c in d["cycles"]],
            bridge=[tuple(e) for e in d["bridge"]],
            cut=list(d["cut"]),
            kappa_before=d["kappa_before"],
            kappa_after=d["kappa_after"],
            stage_log=list(d["stage_log"]),
            structures=dict(d.get("structures", {})),
        )

    @classmethod
    def from_json(cls, text: str) -> "PreserveCertificate":
        return cls.from_dict(json.loads(text))


class _Log:
    def __init__(self):
        self.entries: list[dict] = []

    def add(self, stage: str, **data: Any) -> None:
        self.entries.append({"stage": stage, **data})

    def warn(self, message: str) -> None:
        log.warning(message)
        self.entries.append({"stage": "warning", "message": message})


# --------------------------------------------------------------------------
# helpers


def _drop(G: Graph, F: Iterable[Edge]) -> Graph:
    adj = list(G.adj)
    for u, v in F:
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
    return Graph(G.n, tuple(adj))


def _union_edges(cycles: Sequence[Sequence[int]]) -> list[Edge]:
    return sorted({e for c in cycles for e in cycle_edges(c)})


def _count_in(G: Graph, v: int, S: Iterable[int]) -> int:
    return (G.adj[v] & mask_of(S)).bit_count()


def _check(ok: bool, text: str, logbook: _Log, strict: bool, kind: str = "hypothesis") -> bool:
    logbook.add(kind, check=text, holds=bool(ok))
    if not ok:
        if strict:
            raise BoundViolationError(f"{text} does not hold")
        logbook.warn(f"{text} does not hold; constructive guarantees void")
    return ok


# --------------------------------------------------------------------------
# stages


def select_q_split(M_H, M_B, p: int, q: int) -> tuple[int, int]:
    """``q1 = min{q, max{0, |M_H| - |M_B| - max{p, q}}}`` and ``q2 = q - q1``."""
    if isinstance(M_H, int):
        mh, mb = M_H, M_B
    else:
        if not set(map(tuple, M_B)) <= set(map(tuple, M_H)):
            raise DomainError("M_B must be a subset of M_H")
        mh, mb = len(M_H), len(M_B)
    if p < 0 or q < 0:
        raise DomainError("p and q must be nonnegative")
    q1 = min(q, max(0, mh - mb - max(p, q)))
    return q1, q - q1


def separate(Gp: Graph, p: int, W: Sequence[int] | None = None) -> SeparationStructure:
    """Two sides of ``Gp - W`` (W defaults to a minimum cut of ``Gp``)."""
    if W is None:
        W = min_vertex_cut(Gp).W
    comps = separation_components(Gp, W)
    if len(comps) != 2:
        raise BoundViolationError(f"removing the cut leaves {len(comps)} components, expected 2")
    comps.sort(key=lambda c: (len(c), c[0]))
    return SeparationStructure(tuple(sorted(W)), tuple(comps[0]), tuple(comps[1]), p)


def heavy_split(G: Graph, sep: SeparationStructure, host: Graph | None = None, among=None):
    """Cut vertices with at least as many neighbours in G1 as in G2, and the rest."""
    H = G if host is None else host
    pool = sep.W if among is None else among
    W1 = tuple(w for w in pool if _count_in(H, w, sep.G1) >= _count_in(H, w, sep.G2))
    W2 = tuple(w for w in pool if w not in W1)
    return W1, W2


def build_bridge(G: Graph, sep: SeparationStructure, k: int, exact: bool = False) -> BridgeSystem:
    W1, W2 = heavy_split(G, sep)
    try:
        ps: PathSystem = covering_bridge_flow(
            G, sep.G1, sep.G2, sep.W, k, heavy_entry=W1, max_pairs=0 if exact else None
        )
    except InfeasibleError as exc:
        raise BoundViolationError(f"no covering bridge system: {exc}") from exc
    return BridgeSystem(tuple(tuple(p) for p in ps.paths), W1, W2)


def find_q1_pairs(G: Graph, M_H, M_B, q1: int, side1: Iterable[int] | None = None) -> list[EdgePair]:
    """``q1`` edge-disjoint edge-pairs among the crossing edges outside the bridge.

    With ``side1`` given each edge is written side-1 end first.
    """
    if q1 <= 0:
        return []
    banned = {edge(*e) for e in M_B}
    pool = sorted({edge(*e) for e in M_H} - banned)
    for u, v in pool:
        if not G.has_edge(u, v):
            raise DomainError(f"({u},{v}) is not an edge")
    try:
        found = max_pairs_in_edges(pool)
    except ExceptionalGraphError as exc:
        raise InternalConsistencyError(f"crossing edges contain a triangle: {exc}") from exc
    if len(found) < q1:
        raise InternalConsistencyError(f"only {len(found)} crossing edge-pairs, need {q1}")
    s1 = set(side1) if side1 is not None else None

    def orient(e: Edge) -> Edge:
        if s1 is not None and e[0] not in s1:
            return (e[1], e[0])
        return e

    return [EdgePair(orient(a), orient(b)) for a, b in sorted(found)[:q1]]


def _star_pairs(G: Graph, side: Sequence[int], w1: int, w2: int, banned: set, need: int):
    """``need`` pairs ``(x, y)`` with ``x w1``, ``y w2`` edge-disjoint edges, ``x != y``."""
    smask = mask_of(side)
    E = [edge(w, x) for w in (w1, w2) for x in bits(G.adj[w] & smask) if edge(w, x) not in banned]
    if len(E) < 2 * need:
        return None
    try:
        found = max_pairs_in_edges(E)
    except ExceptionalGraphError:
        return None
    if len(found) < need:
        return None
    out = []
    for a, b in sorted(found)[:need]:
        ea, eb = (a, b) if w1 in a else (b, a)
        out.append((ea[0] if ea[1] == w1 else ea[1], eb[0] if eb[1] == w2 else eb[1]))
    return out


def find_w_stars(
    G: Graph,
    sep: SeparationStructure,
    bridge: BridgeSystem,
    q2: int,
    strict: bool = True,
    logbook: _Log | None = None,
) -> tuple[int, int, list[tuple[Connector, Connector]]]:
    """Two cut vertices carrying ``q2`` pairs of order-3 connectors.

    Candidates need ``q2 + 1`` neighbours on each side (``3`` when
    ``q2 = 1``). Returns ``(w1, w2, Q2)`` where each ``Q2`` entry is the
    connector pair ``(u_a, (w1,), v_a), (u_b, (w2,), v_b)``.
    """
    if q2 <= 0:
        raise DomainError("find_w_stars needs q2 > 0")
    thr = q2 + 2 if q2 == 1 else q2 + 1
    banned = set(bridge.B)

    def side_counts(w):
        return _count_in(G, w, sep.G1), _count_in(G, w, sep.G2)

    def attempt(cands):
        for w1, w2 in combinations(cands, 2):
            left = _star_pairs(G, sep.G1, w1, w2, banned, q2)
            if left is None:
                continue
            right = _star_pairs(G, sep.G2, w1, w2, banned, q2)
            if right is None:
                continue
            Q2 = [((ua, (w1,), va), (ub, (w2,), vb)) for (ua, ub), (va, vb) in zip(left, right)]
            return w1, w2, Q2
        return None

    strong = [w for w in sep.W if min(side_counts(w)) >= thr]
    got = attempt(strong)
    if got is not None:
        return got
    if strict:
        raise BoundViolationError(f"fewer than two cut vertices with {thr} neighbours on each side")
    if logbook is not None:
        logbook.warn(f"no cut-vertex pair meets the {thr}-neighbour threshold; trying all pairs")
    got = attempt(list(sep.W))
    if got is None:
        raise BoundViolationError("no pair of cut vertices carries the order-3 connectors")
    return got


def _side_paths(host: Graph, S: Sequence[int], req: list[tuple[int, int]], fallback: bool, logbook: _Log, tag: str):
    if not req:
        return []
    sub, labels = induced_subgraph(host, S)
    idx = {v: i for i, v in enumerate(labels)}
    mapped = [(idx[a], idx[b]) for a, b in req]
    part = lemma_h_partition(sub, len(req))
    logbook.add("lemma_h", side=tag, order=sub.n, ell=len(req), holds=part is not None,
                low=[labels[v] for v in part[1]] if part else None)
    if part is None:
        if not fallback:
            raise BoundViolationError(f"degree bounds for {len(req)} Hamiltonian paths fail on side {tag}")
        logbook.warn(f"degree bounds fail on side {tag}; searching for paths instead")
        try:
            paths = edge_disjoint_ham_paths(sub, mapped, fallback=True)
        except NotApplicableError as exc:
            raise BoundViolationError(f"side {tag}: {exc}") from exc
    else:
        try:
            paths = edge_disjoint_ham_paths(sub, mapped)
        except NotApplicableError as exc:
            raise InternalConsistencyError(f"side {tag}: path condition failed under the degree bounds: {exc}") from exc
    return [[labels[v] for v in p] for p in paths]


def build_side_paths(
    G: Graph,
    sep: SeparationStructure,
    bridge: BridgeSystem,
    budget: CrossingBudget,
    phase: str,
    exclude: Iterable[Edge] = (),
    fallback: bool = False,
    logbook: _Log | None = None,
) -> tuple[list[list[int]], list[list[int]]]:
    """Edge-disjoint Hamiltonian paths on both sides for one phase.

    Phase ``"one"`` serves the crossing-edge connectors on
    ``<V(Gi) + Wi>`` of ``G - (E(B) + Q2)``; phase ``"two"`` serves the
    cut-vertex connectors on ``<V(Gi) + W''i>`` of ``G - (E(B) + exclude)``
    where ``exclude`` holds the edges of the phase-one cycles.
    """
    lg = logbook if logbook is not None else _Log()
    if phase == "one":
        host = _drop(G, bridge.B + budget.Q2_edges())
        W1, W2 = bridge.W1, bridge.W2
        conns = budget.Q1
    elif phase == "two":
        host = _drop(G, list(bridge.B) + list(exclude))
        rest = [w for w in sep.W if budget.w_star is None or w not in budget.w_star]
        W1, W2 = heavy_split(G, sep, host=host, among=rest)
        conns = budget.Q2
    else:
        raise DomainError(f"unknown phase {phase!r}")
    lg.add("side_sets", phase=phase, W1=list(W1), W2=list(W2))
    req1 = [(c1[0], c2[0]) for c1, c2 in conns]
    req2 = [(c1[2], c2[2]) for c1, c2 in conns]
    side1 = _side_paths(host, list(sep.G1) + list(W1), req1, fallback, lg, f"{phase}/1")
    side2 = _side_paths(host, list(sep.G2) + list(W2), req2, fallback, lg, f"{phase}/2")
    return side1, side2


def assemble_cycles(
    sideA: Sequence[Sequence[int]],
    sideB: Sequence[Sequence[int]],
    Q1: Sequence[tuple[Connector, Connector]],
    Q2: Sequence[tuple[Connector, Connector]] = (),
) -> list[list[int]]:
    """Close side paths into cycles through their connectors.

    Connector pairs are consumed in the order ``Q1 + Q2``; cycle ``i`` is
    ``A_i`` from ``a1`` to ``a2``, the middle of connector 2, ``B_i`` from
    ``b2`` to ``b1``, then the middle of connector 1.
    """
    conns = list(Q1) + list(Q2)
    if not (len(sideA) == len(sideB) == len(conns)):
        raise InternalConsistencyError("side path and connector counts differ")
    cycles = []
    for pa, pb, ((a1, mid1, b1), (a2, mid2, b2)) in zip(sideA, sideB, conns):
        pa, pb = list(pa), list(pb)
        if pa and pa[0] != a1:
            pa.reverse()
        if pb and pb[0] != b2:
            pb.reverse()
        if not pa or pa[0] != a1 or pa[-1] != a2 or not pb or pb[0] != b2 or pb[-1] != b1:
            raise InternalConsistencyError("side path endpoints do not match connector ends")
        cycles.append(pa + list(mid2) + pb + list(mid1))
    return cycles


# --------------------------------------------------------------------------
# repair machinery


def _repair(
    G: Graph,
    k: int,
    H_edges: Sequence[Edge],
    p: int,
    q: int,
    logbook: _Log,
    strict: bool,
    exact: bool = False,
    conc1: bool = False,
) -> tuple[list[list[int]], dict, SeparationStructure, BridgeSystem]:
    Gp = G if exact else _drop(G, H_edges)
    try:
        cut = min_vertex_cut(Gp)
    except NoCutError as exc:
        raise DomainError("graph is complete; there is no cut to preserve") from exc
    sep = separate(Gp, p, cut.W)
    logbook.add("separation", W=list(sep.W), sizes=[len(sep.G1), len(sep.G2)], k_prime=sep.k_prime)
    _check(sep.window_ok(), "side sizes lie in the separation window", logbook, strict, kind="claim")

    bridge = build_bridge(G, sep, k, exact=exact)
    kpp = bridge.k_double_prime
    logbook.add("bridge", paths=[list(p) for p in bridge.paths], k_double_prime=kpp)
    internal = {x for pth in bridge.paths for x in pth[1:-1]}
    if internal != set(sep.W) or any(not 2 <= len(pth) <= 4 for pth in bridge.paths):
        raise InternalConsistencyError("bridge system does not cover the cut with short paths")
    _check(math.ceil(sep.k_prime / 2) <= kpp <= sep.k_prime, "bridge count within [k'/2, k']", logbook, strict, kind="claim")
    if not bridge.straddles():
        logbook.warn("an order-4 bridge path does not run from the heavy to the light cut side")

    M_H = [] if exact else crossing_edges(G, sep.G1, sep.G2)
    M_B = bridge.M_B
    q1, q2 = select_q_split(M_H, M_B, p, q)
    if conc1:
        q1, q2 = q, 0
    U1 = sorted({x for e in M_H for x in e} & set(sep.G1))
    U2 = sorted({x for e in M_H for x in e} & set(sep.G2))
    budget = CrossingBudget(M_H, M_B, U1, U2, q1, q2)
    logbook.add("budget", M_H=len(M_H), M_B=len(M_B), q1=q1, q2=q2)

    if q1:
        prs = find_q1_pairs(G, M_H, M_B, q1, side1=sep.G1)
        budget.Q1 = [((a.e1[0], (), a.e1[1]), (a.e2[0], (), a.e2[1])) for a in prs]
        logbook.add("q1_pairs", pairs=[p.to_list() for p in prs])
    if q2:
        w1, w2, Q2 = find_w_stars(G, sep, bridge, q2, strict=strict, logbook=logbook)
        budget.w_star = (w1, w2)
        budget.Q2 = Q2
        logbook.add("w_stars", w_star=[w1, w2], connectors=len(Q2))

    fallback = not strict
    cycles: list[list[int]] = []
    side_record: dict = {}
    if q1:
        s1, s2 = build_side_paths(G, sep, bridge, budget, "one", fallback=fallback, logbook=logbook)
        cycles += assemble_cycles(s1, s2, budget.Q1)
        side_record["one"] = [s1, s2]
    if q2:
        s1, s2 = build_side_paths(G, sep, bridge, budget, "two", exclude=_union_edges(cycles),
                                  fallback=fallback, logbook=logbook)
        cycles += assemble_cycles(s1, s2, [], budget.Q2)
        side_record["two"] = [s1, s2]
    logbook.add("assemble", cycles=len(cycles))

    for c in cycles:
        if not is_ham_cycle(G, c):
            raise InternalConsistencyError("assembled cycle is not Hamiltonian")
    used = [e for c in cycles for e in cycle_edges(c)]
    if len(used) != len(set(used)):
        raise InternalConsistencyError("assembled cycles share an edge")
    if set(used) & set(bridge.B):
        raise InternalConsistencyError("an assembled cycle uses a bridge edge")

    # consistency checks on the remainder
    R = _drop(G, used)
    for tag, side in (("1", sep.G1), ("2", sep.G2)):
        sub, _ = induced_subgraph(R, side)
        if sub.n >= k + 1 and 2 * sub.min_degree >= sub.n + k - 2:
            ok = is_k_connected(sub, k)
            logbook.add("side_degree_check", side=tag, k_connected=ok)
            if not ok:
                raise InternalConsistencyError(f"side {tag} meets the degree bound but is not {k}-connected")
        else:
            logbook.add("side_degree_check", side=tag, k_connected=None)
    both = list(sep.G1) + list(sep.G2)
    lows = [w for w in sep.W if _count_in(R, w, both) < k]
    logbook.add("cut_vertex_degree_check", holds=not lows, short=lows)
    if lows:
        logbook.warn(f"cut vertices {lows} have fewer than {k} side neighbours in the remainder")

    structures = {
        "separation": sep.to_dict(),
        "bridge": bridge.to_dict(),
        "budget": budget.to_dict(),
        "side_paths": side_record,
    }
    return cycles, structures, sep, bridge


# --------------------------------------------------------------------------
# public pipelines


def _preflight(G: Graph, k: int, bound: int, logbook: _Log, strict: bool, what: str) -> bool:
    n = G.n
    if n < 3:
        raise DomainError("need at least 3 vertices")
    if k < 2:
        raise DomainError("k must be at least 2")
    if kappa_capped(G, k) < k:
        raise BoundViolationError(f"input is not {k}-connected")
    dirac = 2 * G.min_degree >= n
    _check(dirac, f"2*delta(G) = {2 * G.min_degree} >= n = {n}", logbook, strict)
    big = _check(n >= bound, f"n = {n} >= {bound} ({what} order bound)", logbook, strict)
    return dirac and big


def _finish(G, k, ell, exact, cycles, logbook, cut=(), bridge=(), structures=None) -> PreserveCertificate:
    R = _drop(G, _union_edges(cycles))
    if exact:
        kb, ka = kappa(G), kappa(R)
    else:
        kb, ka = kappa_capped(G, k + 1), kappa_capped(R, k + 1)
    return PreserveCertificate(
        n=G.n,
        k=k,
        ell=ell,
        exact=exact,
        input_hash=G.digest(),
        cycles=[list(c) for c in cycles],
        bridge=[tuple(e) for e in bridge],
        cut=list(cut),
        kappa_before=kb,
        kappa_after=ka,
        stage_log=logbook.entries,
        structures=structures or {},
    )


def _search_one(G: Graph, k: int, seed: int) -> list[int] | None:
    if G.n <= FALLBACK_ENUM_N:
        for cyc in iter_ham_cycles(G):
            if is_k_connected(_drop(G, cycle_edges(cyc)), k):
                return cyc
        return None
    for t in range(FALLBACK_TRIES):
        cyc = find_ham_cycle(G, seed=seed + t, budget=SEARCH_BUDGET // 8)
        if cyc is not None and is_k_connected(_drop(G, cycle_edges(cyc)), k):
            return cyc
    return None


def _search_many(G: Graph, k: int, ell: int, seed: int) -> list[list[int]] | None:
    for t in range(FALLBACK_TRIES // 8):
        try:
            cyc = extract_disjoint_cycles(G, ell, seed=seed + t, budget=SEARCH_BUDGET // 8)
        except ExtractionFailure:
            continue
        if is_k_connected(_drop(G, _union_edges(cyc)), k):
            return cyc
    return None


def preserve_one(
    G: Graph,
    k: int,
    initial_cycle: Sequence[int] | None = None,
    strict: bool = False,
    fallback: bool = True,
    seed: int = 0,
) -> PreserveCertificate:
    """One Hamiltonian cycle whose removal leaves ``G`` k-connected.

    ``initial_cycle`` replaces the cycle tried first (handy to force the
    repair branch). With ``strict`` every failed hypothesis raises; below
    the order bound and with ``fallback`` a failed repair is answered by
    search over Hamiltonian cycles.
    """
    lg = _Log()
    valid = _preflight(G, k, bound_one(k), lg, strict, "single-cycle")
    return _preserve(G, k, 1, [list(initial_cycle)] if initial_cycle is not None else None,
                     lg, valid, strict, fallback, seed)


def preserve_many(
    G: Graph,
    k: int,
    ell: int,
    initial_cycles: Sequence[Sequence[int]] | None = None,
    strict: bool = False,
    fallback: bool = True,
    seed: int = 0,
    conc1: bool = False,
) -> PreserveCertificate:
    """``ell`` edge-disjoint Hamiltonian cycles with a k-connected remainder.

    ``conc1`` selects the stronger-degree mode (all cycles closed by
    crossing edge-pairs).
    """
    if ell < 1:
        raise DomainError("ell must be positive")
    if ell == 1 and not conc1:
        return preserve_one(G, k, initial_cycles[0] if initial_cycles else None, strict, fallback, seed)
    lg = _Log()
    if conc1:
        valid = _preflight(G, k, 0, lg, strict, "stronger-degree")
        _check(2 * G.min_degree >= G.n + k - 2, "2*delta(G) >= n + k - 2", lg, strict)
    else:
        valid = _preflight(G, k, bound_many(k, ell), lg, strict, "multi-cycle")
    start = [list(c) for c in initial_cycles] if initial_cycles is not None else None
    return _preserve(G, k, ell, start, lg, valid, strict, fallback, seed, conc1=conc1)


def _preserve(G, k, ell, start, lg: _Log, valid: bool, strict: bool, fallback: bool, seed: int,
              conc1: bool = False) -> PreserveCertificate:
    p, q = 2 * ell, ell
    cycles = start
    if cycles is None:
        try:
            if ell == 1:
                cycles = [ham_cycle_dirac(G)]
                lg.add("initial", method="closure")
            else:
                cycles = extract_disjoint_cycles(G, ell, seed=seed)
                lg.add("initial", method="greedy-extraction")
        except NotApplicableError:
            if strict:
                raise BoundViolationError("degree condition for the closure construction fails")
            lg.warn("closure construction not applicable; searching")
            cyc = find_ham_cycle(G, seed=seed) if ell == 1 else None
            cycles = [cyc] if cyc is not None else None
        except ExtractionFailure as exc:
            lg.add("initial", method="greedy-extraction", failed=str(exc))
            raise
    else:
        lg.add("initial", method="given")
        for c in cycles:
            if not is_ham_cycle(G, c):
                raise DomainError("given initial cycle is not a Hamiltonian cycle of the graph")
        if len(_union_edges(cycles)) != G.n * len(cycles):
            raise DomainError("given initial cycles are not edge-disjoint")
    if cycles is not None:
        H = _union_edges(cycles)
        if is_k_connected(_drop(G, H), k) and not conc1:
            lg.add("direct", k_connected=True)
            return _finish(G, k, ell, False, cycles, lg)
        lg.add("direct", k_connected=False)
    else:
        H = None
    try:
        if H is None:
            raise BoundViolationError("no starting cycle available")
        new, structs, sep, bridge = _repair(G, k, H, p, q, lg, strict=strict or valid, conc1=conc1)
        R = _drop(G, _union_edges(new))
        if is_k_connected(R, k):
            lg.add("final_check", k_connected=True)
            return _finish(G, k, ell, False, new, lg, sep.W, bridge.B, structs)
        lg.add("final_check", k_connected=False)
        if valid:
            raise InternalConsistencyError(f"repaired remainder is not {k}-connected")
        lg.warn("repaired remainder is not k-connected below the order bound")
    except (BoundViolationError, InfeasibleError, NotApplicableError) as exc:
        if valid:
            raise InternalConsistencyError(f"repair step failed above the order bound: {exc}") from exc
        lg.warn(f"repair failed: {exc}")
    if not fallback:
        raise BoundViolationError("repair failed below the order bound and fallback is disabled")
    found = _search_one(G, k, seed) if ell == 1 else _search_many(G, k, ell, seed)
    lg.add("fallback_search", found=found is not None)
    if found is None:
        raise BoundViolationError("no connectivity-preserving cycles found by search")
    return _finish(G, k, ell, False, [found] if ell == 1 else found, lg)


def preserve_exact(G: Graph, ell: int, strict: bool = False) -> PreserveCertificate:
    """``ell`` edge-disjoint Hamiltonian cycles keeping the connectivity exactly."""
    if ell < 1:
        raise DomainError("ell must be positive")
    if G.n < 3 or G.is_complete():
        raise DomainError("complete graphs have no cut to preserve")
    lg = _Log()
    kap = kappa(G)
    if kap < 2:
        raise BoundViolationError("connectivity must be at least 2")
    _check(2 * G.min_degree >= G.n, f"2*delta(G) = {2 * G.min_degree} >= n = {G.n}", lg, strict)
    valid = _check(G.n >= bound_exact(kap, ell), f"n = {G.n} >= {bound_exact(kap, ell)} (exact order bound)", lg, strict)
    valid = valid and 2 * G.min_degree >= G.n
    lg.add("initial", method="cut-construction", kappa=kap)
    try:
        cycles, structs, sep, bridge = _repair(G, kap, [], 0, ell, lg, strict=strict or valid, exact=True)
    except (BoundViolationError, InfeasibleError, NotApplicableError) as exc:
        if valid:
            raise InternalConsistencyError(f"exact construction failed above the order bound: {exc}") from exc
        raise
    cert = _finish(G, kap, ell, True, cycles, lg, sep.W, bridge.B, structs)
    if cert.kappa_after != kap:
        if valid:
            raise InternalConsistencyError(f"remainder connectivity {cert.kappa_after} differs from {kap}")
        raise BoundViolationError(f"remainder connectivity {cert.kappa_after} differs from {kap}")
    return cert


def repair_with(G: Graph, k: int, H_edges: Sequence[Edge], p: int, q: int, strict: bool = True):
    """Run the repair machinery for an arbitrary removed subgraph of max degree ``p``.

    Returns ``(cycles, structures, log entries)``.
    """
    deg: dict[int, int] = {}
    for u, v in H_edges:
        if not G.has_edge(u, v):
            raise DomainError(f"({u},{v}) is not an edge")
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if deg and max(deg.values()) > p:
        raise DomainError(f"removed subgraph has maximum degree above {p}")
    lg = _Log()
    cycles, structs, _, _ = _repair(G, k, [edge(*e) for e in H_edges], p, q, lg, strict=strict)
    return cycles, structs, lg.entries


__all__ = [
    "SCHEMA",
    "SeparationStructure",
    "BridgeSystem",
    "CrossingBudget",
    "PreserveCertificate",
    "bound_one",
    "bound_many",
    "bound_exact",
    "bound_general",
    "select_q_split",
    "separate",
    "heavy_split",
    "build_bridge",
    "find_q1_pairs",
    "find_w_stars",
    "build_side_paths",
    "assemble_cycles",
    "preserve_one",
    "preserve_many",
    "preserve_exact",
    "repair_with",
]
