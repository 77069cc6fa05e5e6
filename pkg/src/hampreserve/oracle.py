"""Brute-force oracles and the certificate verifier.

Nothing here calls into the constructive modules (`pairs`, `hamilton`,
`preserve`). Connectivity of certificate remainders is recomputed with
the flow code in `connectivity` and, for small graphs, again by subset
enumeration.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterator, Sequence

from .connectivity import is_k_connected, kappa, min_vertex_cut
from .errors import SizeError, StaleCertificateError
from .graph import Graph, bits, components, edge

MAX_HAM_N = 14
MAX_PAIR_EDGES = 28  # every graph on 8 vertices
MAX_PRESERVE_N = 12
MAX_KAPPA_N = 12


# --------------------------------------------------------------------------
# connectivity


def _disconnects(G: Graph, removed: int) -> bool:
    rest = ((1 << G.n) - 1) & ~removed
    if rest.bit_count() < 2:
        return False
    return len(components(G, rest)) > 1


def brute_kappa(G: Graph) -> int:
    """Smallest vertex set whose removal disconnects G (n-1 if none)."""
    n = G.n
    if n > MAX_KAPPA_N:
        raise SizeError(f"brute_kappa is limited to n <= {MAX_KAPPA_N}")
    if n < 2:
        raise SizeError("need n >= 2")
    for s in range(0, n - 1):
        for S in combinations(range(n), s):
            mask = 0
            for v in S:
                mask |= 1 << v
            if _disconnects(G, mask):
                return s
    return n - 1


def brute_is_k_connected(G: Graph, k: int) -> bool:
    if G.n < k + 1:
        return False
    for s in range(0, k):
        for S in combinations(range(G.n), s):
            mask = 0
            for v in S:
                mask |= 1 << v
            if _disconnects(G, mask):
                return False
    return True


# --------------------------------------------------------------------------
# Hamiltonian cycles


def brute_ham_enum(G: Graph, limit: int | None = None) -> list[list[int]]:
    """All Hamiltonian cycles up to rotation and reflection.

    Canonical form: vertex 0 first and the smaller of its two cycle
    neighbours second.
    """
    return list(_ham_iter(G, limit))


def _ham_iter(G: Graph, limit: int | None) -> Iterator[list[int]]:
    n = G.n
    if n > MAX_HAM_N:
        raise SizeError(f"brute_ham_enum is limited to n <= {MAX_HAM_N}")
    if n < 3:
        return
    full = (1 << n) - 1
    adj = G.adj
    path = [0]
    count = 0
    stack = [(0, 1, iter(list(bits(adj[0] & ~1))))]
    while stack:
        cur, visited, it = stack[-1]
        nxt = next(it, None)
        if nxt is None:
            stack.pop()
            path.pop()
            continue
        path.append(nxt)
        vis = visited | (1 << nxt)
        if vis == full:
            if adj[nxt] & 1 and path[1] < path[-1]:
                yield list(path)
                count += 1
                if limit is not None and count >= limit:
                    return
            path.pop()
            continue
        stack.append((nxt, vis, iter(list(bits(adj[nxt] & ~vis)))))


# --------------------------------------------------------------------------
# edge-pairs


def brute_max_pairs(G: Graph) -> int:
    """Maximum matching in the edge-independence graph, by branch and bound."""
    E = G.edges()
    if len(E) > MAX_PAIR_EDGES:
        raise SizeError(f"brute_max_pairs is limited to {MAX_PAIR_EDGES} edges")
    m = len(E)
    indep = [[j for j in range(m) if not (set(E[i]) & set(E[j]))] for i in range(m)]
    best = 0

    def bound(free: list[int]) -> int:
        if not free:
            return 0
        load = Counter()
        for i in free:
            load[E[i][0]] += 1
            load[E[i][1]] += 1
        return min(len(free) // 2, len(free) - max(load.values()))

    def rec(free: list[int], got: int) -> None:
        nonlocal best
        if got > best:
            best = got
        if got + bound(free) <= best:
            return
        i, rest = free[0], free[1:]
        rs = set(rest)
        for j in indep[i]:
            if j in rs:
                rec([x for x in rest if x != j], got + 1)
        rec(rest, got)

    rec(list(range(m)), 0)
    return best


def pairs_are_valid(G: Graph, pairs: Sequence[Sequence[Sequence[int]]]) -> list[str]:
    """Problems with a list of edge-pairs as an edge-disjoint packing in G."""
    issues = []
    seen: set = set()
    for idx, pr in enumerate(pairs):
        (a, b), (c, d) = pr
        if {a, b} & {c, d}:
            issues.append(f"pair {idx} shares an endpoint")
        for u, v in ((a, b), (c, d)):
            if not G.has_edge(u, v):
                issues.append(f"pair {idx} uses non-edge ({u},{v})")
            e = edge(u, v)
            if e in seen:
                issues.append(f"edge {e} reused")
            seen.add(e)
    return issues


# --------------------------------------------------------------------------
# preservation


def _remove_cycle(G: Graph, cycle: Sequence[int]) -> Graph:
    adj = list(G.adj)
    n = len(cycle)
    for i in range(n):
        u, v = cycle[i], cycle[(i + 1) % n]
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
    return Graph(G.n, tuple(adj))


def brute_preserving_exists(G: Graph, k: int) -> bool:
    """Is there a Hamiltonian cycle whose removal leaves a k-connected graph?"""
    if G.n > MAX_PRESERVE_N:
        raise SizeError(f"brute_preserving_exists is limited to n <= {MAX_PRESERVE_N}")
    return brute_preserving_witness(G, k) is not None


def brute_preserving_witness(G: Graph, k: int) -> list[int] | None:
    if G.n > MAX_PRESERVE_N:
        raise SizeError(f"limited to n <= {MAX_PRESERVE_N}")
    for cyc in _ham_iter(G, None):
        if brute_is_k_connected(_remove_cycle(G, cyc), k):
            return cyc
    return None


# --------------------------------------------------------------------------
# certificate verification


@dataclass
class Check:
    name: str
    passed: bool
    detail: Any = None

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: Any = None) -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_dict() for c in self.checks]}


def _field(cert: Any, name: str):
    if isinstance(cert, dict):
        return cert[name]
    return getattr(cert, name)


def verify_certificate(G: Graph, cert: Any, k: int, exact: bool = False) -> VerificationReport:
    """Re-check a certificate (object or JSON dict) against G from scratch."""
    digest = _field(cert, "input_hash")
    if digest != G.digest():
        raise StaleCertificateError("certificate does not belong to this graph")
    cycles = [list(c) for c in _field(cert, "cycles")]
    rep = VerificationReport()
    rep.add("has_cycles", len(cycles) > 0, {"count": len(cycles)})
    n = G.n
    used: Counter = Counter()
    for idx, cyc in enumerate(cycles):
        problems = []
        if len(cyc) != n or set(cyc) != set(range(n)):
            problems.append({"cycle": idx, "reason": "not a permutation of the vertices"})
        for i in range(len(cyc)):
            u, v = cyc[i], cyc[(i + 1) % len(cyc)]
            if not (0 <= u < n and 0 <= v < n) or not G.has_edge(u, v):
                problems.append({"cycle": idx, "reason": "non-edge", "edge": [u, v]})
            else:
                used[edge(u, v)] += 1
        rep.add(f"hamiltonian[{idx}]", not problems, problems or None)
    repeated = sorted(e for e, c in used.items() if c > 1)
    rep.add("edge_disjoint", not repeated, [list(e) for e in repeated] or None)
    if not rep.passed:
        return rep
    R = G
    for cyc in cycles:
        R = _remove_cycle(R, cyc)
    ok = is_k_connected(R, k)
    detail: dict[str, Any] = {}
    if not ok and R.n >= 3 and not R.is_complete():
        detail["cut"] = list(min_vertex_cut(R).W)
    rep.add("remainder_k_connected", ok, detail or None)
    if n <= 10:
        rep.add("remainder_k_connected_brute", brute_is_k_connected(R, k))
    if exact:
        kap = kappa(R)
        rep.add("remainder_kappa_exact", kap == k, {"kappa": kap, "expected": k})
    return rep


__all__ = [
    "brute_kappa",
    "brute_is_k_connected",
    "brute_ham_enum",
    "brute_max_pairs",
    "pairs_are_valid",
    "brute_preserving_exists",
    "brute_preserving_witness",
    "Check",
    "VerificationReport",
    "verify_certificate",
]
