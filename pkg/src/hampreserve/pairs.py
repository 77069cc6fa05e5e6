"""Edge-pairs: decomposition and maximum packing.

An edge-pair is two edges with no common endpoint. The routines here are
the inductive arguments for the decomposition criterion (even size, at
least twice the maximum degree, no triangle among exactly four edges)
and for the maximum number of edge-disjoint edge-pairs, unrolled into
loops. They work on plain edge lists so callers can pass subgraphs in
their own labels.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, Sequence

from .errors import ConditionError, DomainError, ExceptionalGraphError, InternalConsistencyError
from .graph import Graph

Edge = tuple[Hashable, Hashable]


@dataclass(frozen=True)
class EdgePair:
    e1: Edge
    e2: Edge

    def __post_init__(self):
        if set(self.e1) & set(self.e2):
            raise DomainError(f"edges {self.e1} and {self.e2} share an endpoint")

    def edges(self) -> tuple[Edge, Edge]:
        return (self.e1, self.e2)

    def to_list(self) -> list[list]:
        return [list(self.e1), list(self.e2)]


@dataclass(frozen=True)
class PairDecomposition:
    pairs: tuple[EdgePair, ...]
    n: int

    def __len__(self) -> int:
        return len(self.pairs)

    def edges(self) -> list[Edge]:
        return [e for p in self.pairs for e in p.edges()]


def _norm(e: Edge) -> Edge:
    u, v = e
    return (u, v) if u < v else (v, u)


def _degrees(E: Iterable[Edge]) -> Counter:
    deg: Counter = Counter()
    for u, v in E:
        deg[u] += 1
        deg[v] += 1
    return deg


def _max_degree(E: Sequence[Edge]) -> int:
    return max(_degrees(E).values(), default=0)


def _has_triangle(E: Sequence[Edge]) -> bool:
    nb: dict = {}
    for u, v in E:
        nb.setdefault(u, set()).add(v)
        nb.setdefault(v, set()).add(u)
    return any(nb[u] & nb[v] for u, v in E)


def _independent(e: Edge, f: Edge) -> bool:
    return e[0] not in f and e[1] not in f


def _violated(E: Sequence[Edge]) -> int | None:
    """Number of the first failing decomposition condition, or None."""
    m = len(E)
    if m % 2:
        return 1
    if m < 2 * _max_degree(E):
        return 2
    if m == 4 and _has_triangle(E):
        return 3
    return None


def _decomposable(E: Sequence[Edge]) -> bool:
    return not E or _violated(E) is None


def _without(E: Sequence[Edge], *drop: Edge) -> list[Edge]:
    gone = set(drop)
    return [e for e in E if e not in gone]


def _first_valid_pair(E: Sequence[Edge], firsts: Sequence[Edge], seconds: Sequence[Edge]):
    """Lexicographically least independent ``(e, f)`` whose removal keeps E decomposable."""
    cands = set()
    for e in firsts:
        for f in seconds:
            if e != f and _independent(e, f):
                cands.add((e, f) if e < f else (f, e))
    for e, f in sorted(cands):
        if _decomposable(_without(E, e, f)):
            return (e, f)
    return None


def _decompose_edges(E: Sequence[Edge]) -> list[tuple[Edge, Edge]]:
    E = sorted(_norm(e) for e in E)
    if len(set(E)) != len(E):
        raise DomainError("repeated edge")
    bad = _violated(E) if E else None
    if bad is not None:
        raise ConditionError(bad, _CONDITION_TEXT[bad])
    out: list[tuple[Edge, Edge]] = []
    while E:
        deg = _degrees(E)
        delta = max(deg.values())
        m = len(E)
        if delta == 1:
            out += [(E[i], E[i + 1]) for i in range(0, m, 2)]
            break
        phi = m - 2 * delta
        if phi >= 2:
            pair = _first_valid_pair(E, E, E)
        else:
            pair = _balanced_step(E, deg, delta)
        if pair is None:
            raise InternalConsistencyError(f"no admissible edge-pair in {E}")
        out.append(pair)
        E = _without(E, *pair)
    return out


def _balanced_step(E: list[Edge], deg: Counter, delta: int) -> tuple[Edge, Edge] | None:
    """One peeling step when |E| = 2*Delta, by the number of max-degree vertices."""
    tops = sorted(v for v, d in deg.items() if d == delta)
    if len(tops) == 1:
        x = tops[0]
        at_x = [e for e in E if x in e]
        away = [e for e in E if x not in e]
        return _first_valid_pair(E, at_x, away)
    if len(tops) == 2:
        x1, x2 = tops
        link = _norm((x1, x2))
        if link not in E:
            return _first_valid_pair(
                E, [e for e in E if x1 in e], [e for e in E if x2 in e]
            )
        rest = [e for e in E if x1 not in e and x2 not in e]
        if len(rest) != 1:
            raise InternalConsistencyError("two adjacent max-degree vertices leave more than one edge")
        pair = (link, rest[0]) if link < rest[0] else (rest[0], link)
        return pair if _decomposable(_without(E, *pair)) else None
    x1, x2, x3 = tops[:3]
    if delta == 2:
        # a path on five vertices or a 4-cycle
        return _first_valid_pair(E, E, E)
    if delta == 3:
        tri = [_norm((x1, x2)), _norm((x1, x3)), _norm((x2, x3))]
        if not all(e in E for e in tri):
            raise InternalConsistencyError("three max-degree vertices do not span a triangle")
        # each triangle vertex has exactly one further neighbour; peel one matching
        pend = [e for e in E if x1 in e and e not in tri][0]
        opp = _norm((x2, x3))
        return (pend, opp) if pend < opp else (opp, pend)
    raise InternalConsistencyError(f"three vertices of degree {delta} with |E| = 2*Delta")


_CONDITION_TEXT = {
    1: "condition 1 fails: the number of edges is odd",
    2: "condition 2 fails: fewer edges than twice the maximum degree",
    3: "condition 3 fails: four edges containing a triangle",
}


def phi(G: Graph) -> int:
    return G.m - 2 * G.max_degree


def can_decompose(G: Graph) -> bool:
    if G.m == 0:
        raise DomainError("graph has no edges")
    return _violated(G.edges()) is None


def decompose_into_pairs(G: Graph) -> PairDecomposition:
    """Partition ``E(G)`` into edge-pairs (raises `ConditionError` if impossible)."""
    if G.m == 0:
        raise DomainError("graph has no edges")
    pairs = _decompose_edges(G.edges())
    return PairDecomposition(tuple(EdgePair(a, b) for a, b in pairs), G.n)


# --------------------------------------------------------------------------
# maximum packing


def exceptional_family(E: Sequence[Edge]) -> str | None:
    """Name of the excluded family the edge set belongs to, if any."""
    m = len(E)
    if m not in (3, 4):
        return None
    tri = [e for e in E if _in_triangle(E, e)]
    if len(tri) != 3:
        return None
    tv = {v for e in tri for v in e}
    rest = [e for e in E if e not in tri]
    if not rest:
        return "K3 ∪ (n−3)K1"
    if len(rest) == 1 and not (set(rest[0]) & tv):
        return "K3 ∪ K2 ∪ (n−5)K1"
    return None


def _in_triangle(E: Sequence[Edge], e: Edge) -> bool:
    u, v = e
    nu = {a if b == u else b for a, b in E if u in (a, b)}
    nv = {a if b == v else b for a, b in E if v in (a, b)}
    return bool((nu - {v}) & (nv - {u}))


def max_pairs_count_formula(m: int, delta: int) -> int:
    return m // 2 if m >= 2 * delta else m - delta


def _max_pairs_edges(E: Sequence[Edge]) -> list[tuple[Edge, Edge]]:
    E = sorted(_norm(e) for e in E)
    fam = exceptional_family(E)
    if fam is not None:
        raise ExceptionalGraphError(fam)
    m = len(E)
    if m == 0:
        return []
    deg = _degrees(E)
    delta = max(deg.values())
    if delta == 1:
        return [(E[i], E[i + 1]) for i in range(0, m - 1, 2)]
    if m >= 2 * delta:
        if m % 2 == 0:
            return _decompose_edges(E)
        for e in E:
            rest = _without(E, e)
            if _decomposable(rest):
                return _decompose_edges(rest)
        raise InternalConsistencyError("no edge can be dropped to reach a decomposable graph")
    if delta == 2:
        if m == 2:
            return []
        pair = next(((e, f) for e, f in combinations(E, 2) if _independent(e, f)), None)
        if pair is None:
            raise InternalConsistencyError("three edges without an edge-pair")
        return [pair]
    tops = sorted(v for v, d in deg.items() if d == delta)
    if len(tops) == 2:
        x, y = tops
        link = _norm((x, y))
        if link not in E:
            raise InternalConsistencyError("two max-degree vertices must be adjacent here")
        return _decompose_edges(_without(E, link))
    if len(tops) != 1:
        raise InternalConsistencyError("unexpected number of max-degree vertices")
    x = tops[0]
    return _decompose_edges(_trim_star(E, x, delta))


def _trim_star(E: list[Edge], x, delta: int) -> list[Edge]:
    """Delete 2*Delta - |E| edges at ``x`` so the rest decomposes."""
    m = len(E)
    quota = 2 * delta - m
    at_x = [e for e in E if x in e]
    others = [e for e in E if x not in e]
    deg_rest = _degrees(others)
    top_rest = max(deg_rest.values(), default=0)
    def other_end(e):
        return e[1] if e[0] == x else e[0]
    preferred = []
    if top_rest == m - delta:
        preferred = [e for e in at_x if deg_rest.get(other_end(e), 0) == top_rest]
    order = preferred + [e for e in at_x if e not in preferred]
    deleted = order[:quota]
    kept = _without(E, *deleted)
    if exceptional_family(kept) == "K3 ∪ K2 ∪ (n−5)K1":
        # swap a triangle edge at x for a deleted edge
        tri_at_x = sorted(e for e in kept if x in e and _in_triangle(kept, e))
        for t in tri_at_x:
            for d in sorted(deleted):
                cand = _without(kept, t) + [d]
                if _decomposable(cand):
                    kept = sorted(cand)
                    break
            else:
                continue
            break
    if not _decomposable(kept):
        raise InternalConsistencyError("star trimming left an undecomposable graph")
    return kept


def max_edge_disjoint_pairs(G: Graph) -> tuple[int, list[EdgePair]]:
    """Maximum number of edge-disjoint edge-pairs with a witness."""
    pairs = _max_pairs_edges(G.edges())
    return len(pairs), [EdgePair(a, b) for a, b in pairs]


def max_pairs_in_edges(E: Iterable[Edge]) -> list[tuple[Edge, Edge]]:
    """Same as `max_edge_disjoint_pairs` on an arbitrary edge list."""
    return _max_pairs_edges(list(E))


def decompose_edges(E: Iterable[Edge]) -> list[tuple[Edge, Edge]]:
    return _decompose_edges(list(E))


__all__ = [
    "EdgePair",
    "PairDecomposition",
    "phi",
    "can_decompose",
    "decompose_into_pairs",
    "max_edge_disjoint_pairs",
    "max_pairs_in_edges",
    "decompose_edges",
    "exceptional_family",
    "max_pairs_count_formula",
]
