"""Experiment suites shared by the command line and the acceptance tests.

A suite is a list of independent trials; each trial is a module-level
function plus arguments so trials can run in worker processes. A trial
returns ``(ok, info)``.
"""

from __future__ import annotations

import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator

import networkx as nx

from .connectivity import is_k_connected, kappa
from .graph import Graph, edge
from .hamilton import edge_disjoint_ham_paths, ham_cycle_dirac, is_ham_path, path_edges
from .instances import adversarial_cycle, gen_barbell_dirac, gen_barbell_planted, gen_ch_tightness, gen_dirac, gen_lemma_h
from .oracle import brute_kappa, brute_max_pairs, brute_preserving_exists, pairs_are_valid, verify_certificate
from .pairs import decompose_into_pairs, exceptional_family, max_edge_disjoint_pairs
from .preserve import bound_exact, bound_one, preserve_exact, preserve_one
from .rng import XorShift64Star


@dataclass(frozen=True)
class Trial:
    fn: Callable[..., tuple[bool, dict]]
    args: tuple


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failed: int = 0
    times: list[float] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)
    infos: list[dict] = field(default_factory=list)
    notes: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.passed > 0

    def percentile(self, pct: float) -> float:
        if not self.times:
            return 0.0
        xs = sorted(self.times)
        i = min(len(xs) - 1, max(0, round(pct / 100 * (len(xs) - 1))))
        return xs[i]

    @property
    def median(self) -> float:
        return statistics.median(self.times) if self.times else 0.0

    def summary(self) -> str:
        return (
            f"{self.name:<22} pass {self.passed:>5}  fail {self.failed:>3}  "
            f"p50 {self.percentile(50):.4f}s  p90 {self.percentile(90):.4f}s  max {self.percentile(100):.4f}s"
        )


def _timed(trial: Trial) -> tuple[bool, dict, float]:
    t0 = time.perf_counter()
    try:
        ok, info = trial.fn(*trial.args)
    except Exception as exc:  # a crash is a failed trial, reported with its type
        ok, info = False, {"error": f"{type(exc).__name__}: {exc}", "args": repr(trial.args)}
    return ok, info, time.perf_counter() - t0


def _graph_of(nxg) -> Graph:
    mapping = {v: i for i, v in enumerate(sorted(nxg.nodes()))}
    return Graph.from_edges(len(mapping), [(mapping[u], mapping[v]) for u, v in nxg.edges()])


# --------------------------------------------------------------------------
# trials


def _three_conditions(G: Graph) -> bool:
    m = G.m
    if m % 2 or m < 2 * G.max_degree:
        return False
    if m == 4:
        E = G.edges()
        for u, v in E:
            for w in range(G.n):
                if w not in (u, v) and G.has_edge(u, w) and G.has_edge(v, w):
                    return False
    return True


def trial_decompose(edges: tuple, n: int) -> tuple[bool, dict]:
    G = Graph.from_edges(n, edges)
    expect = _three_conditions(G)
    brute = 2 * brute_max_pairs(G) == G.m
    try:
        dec = decompose_into_pairs(G)
        got = True
        ok = not pairs_are_valid(G, [p.to_list() for p in dec.pairs]) and 2 * len(dec) == G.m
    except ValueError:
        got, ok = False, True
    return ok and got == expect == brute, {"edges": list(edges), "expect": expect, "got": got, "brute": brute}


def trial_max_pairs(n: int, seed: int) -> tuple[bool, dict]:
    rng = XorShift64Star(seed)
    while True:
        density = rng.random()
        E = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < density]
        if exceptional_family(E) is None:
            break
    G = Graph.from_edges(n, E)
    count, witness = max_edge_disjoint_pairs(G)
    brute = brute_max_pairs(G)
    issues = pairs_are_valid(G, [p.to_list() for p in witness])
    return count == brute == len(witness) and not issues, {"n": n, "edges": E, "count": count, "brute": brute}


def _is_ham_cycle(G: Graph, cyc) -> bool:
    if sorted(cyc) != list(range(G.n)):
        return False
    return all(G.has_edge(cyc[i], cyc[(i + 1) % G.n]) for i in range(G.n))


def trial_dirac(n: int, seed: int) -> tuple[bool, dict]:
    G = gen_dirac(n, seed)
    t0 = time.perf_counter()
    cyc = ham_cycle_dirac(G)
    dt = time.perf_counter() - t0
    return _is_ham_cycle(G, cyc) and dt < 1.0, {"n": n, "seed": seed, "seconds": dt}


def trial_lemma_h(n: int, ell: int, seed: int) -> tuple[bool, dict]:
    G, V1, V2, req = gen_lemma_h(n, ell, seed)
    paths = edge_disjoint_ham_paths(G, req)
    ok = len(paths) == ell and all(is_ham_path(G, p, a, b) for p, (a, b) in zip(paths, req))
    used = [e for p in paths for e in path_edges(p)]
    ok = ok and len(used) == len(set(used))
    return ok, {"n": n, "ell": ell, "seed": seed, "V2": len(V2)}


def trial_preserve(kind: str, n: int, k: int, seed: int) -> tuple[bool, dict]:
    start = None
    if kind == "dirac":
        G = gen_dirac(n, seed, surplus=(k - 1) // 2)
    else:
        G, planted = gen_barbell_planted(n, k, seed, rich=kind.endswith("rich"))
        if kind.startswith("adv"):
            start = adversarial_cycle(G, planted, seed)
    cert = preserve_one(G, k, initial_cycle=start, strict=True)
    rep = verify_certificate(G, cert.to_dict(), k)
    return rep.passed, {"kind": kind, "n": n, "k": k, "seed": seed, "repaired": cert.repaired}


def trial_exact(kap: int, ell: int, seed: int) -> tuple[bool, dict]:
    n = bound_exact(kap, ell)
    G = gen_barbell_dirac(n, kap, seed)
    cert = preserve_exact(G, ell, strict=True)
    rep = verify_certificate(G, cert.to_dict(), kap, exact=True)
    ok = rep.passed and cert.kappa_after == cert.kappa_before == kap
    return ok, {"n": n, "kappa": kap, "ell": ell, "seed": seed}


def trial_n7(edges: tuple) -> tuple[bool, dict]:
    G = Graph.from_edges(7, edges)
    exists = brute_preserving_exists(G, 2)
    ok = exists
    if exists:
        cert = preserve_one(G, 2)
        ok = verify_certificate(G, cert, 2).passed
    return ok, {"edges": list(edges), "exists": exists}


def trial_ch(n: int, k: int) -> tuple[bool, dict]:
    G = gen_ch_tightness(n, k)
    kap = kappa(G)
    ok = 2 * G.min_degree == n + k - 3 and kap == k - 1 and not is_k_connected(G, k)
    return ok, {"n": n, "k": k, "delta": G.min_degree, "kappa": kap}


def trial_probe(n: int, seed: int) -> tuple[bool, dict]:
    """Informational: does a sampled 2-connected Dirac graph keep 2-connectivity?"""
    for salt in range(16):
        G = gen_dirac(n, seed ^ salt)
        if is_k_connected(G, 2):
            return True, {"n": n, "seed": seed ^ salt, "exists": brute_preserving_exists(G, 2)}
    return True, {"n": n, "seed": seed, "exists": True, "skipped": True}


def trial_kappa(edges: tuple, n: int) -> tuple[bool, dict]:
    G = Graph.from_edges(n, edges)
    a, b = kappa(G), brute_kappa(G)
    return a == b, {"n": n, "edges": list(edges), "kappa": a, "brute": b}


def trial_kappa_random(n: int, seed: int) -> tuple[bool, dict]:
    rng = XorShift64Star(seed)
    density = rng.random()
    E = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < density]
    return trial_kappa(tuple(E), n)


# --------------------------------------------------------------------------
# enumeration helpers


def atlas(max_n: int, min_n: int = 1) -> Iterator[Graph]:
    """All graphs with ``min_n..max_n`` vertices up to isomorphism."""
    for g in nx.graph_atlas_g():
        if min_n <= g.number_of_nodes() <= max_n:
            yield _graph_of(g)


def _component_signature(n: int, comp_edges: list[tuple[int, int]]) -> tuple:
    """Isomorphism class of a graph with maximum degree two."""
    nb: dict[int, set] = {v: set() for v in range(n)}
    for u, v in comp_edges:
        nb[u].add(v)
        nb[v].add(u)
    seen: set = set()
    sig = []
    for s in range(n):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in nb[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        m = sum(len(nb[x]) for x in comp) // 2
        sig.append(("cycle" if m == len(comp) else "path", len(comp)))
    return tuple(sorted(sig))


def dirac_graphs(n: int) -> list[Graph]:
    """All Dirac graphs of order ``n <= 7`` up to isomorphism.

    For these orders the complement has maximum degree at most two, so the
    labelled complements are enumerated edge by edge and pruned by their
    path/cycle component type, an exact isomorphism invariant there.
    """
    need = (n + 1) // 2
    if n - 1 - need > 2:
        raise ValueError("complement enumeration needs maximum complement degree <= 2")
    allowed = n - 1 - need
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    reps: dict[tuple, list[tuple[int, int]]] = {}
    deg = [0] * n
    chosen: list[tuple[int, int]] = []

    def rec(i: int) -> None:
        if i == len(pairs):
            sig = _component_signature(n, chosen)
            reps.setdefault(sig, list(chosen))
            return
        rec(i + 1)
        u, v = pairs[i]
        if deg[u] < allowed and deg[v] < allowed:
            deg[u] += 1
            deg[v] += 1
            chosen.append((u, v))
            rec(i + 1)
            chosen.pop()
            deg[u] -= 1
            deg[v] -= 1

    rec(0)
    out = []
    for comp in reps.values():
        missing = {edge(*e) for e in comp}
        out.append(Graph.from_edges(n, [e for e in pairs if e not in missing]))
    return out


# --------------------------------------------------------------------------
# suite registry


def suite_thm6(trials: int | None, seed: int) -> list[Trial]:
    out = []
    for G in atlas(7):
        if 2 <= G.m <= 8:
            out.append(Trial(trial_decompose, (tuple(G.edges()), G.n)))
    return out[:trials] if trials else out


def suite_thm7(trials: int | None, seed: int) -> list[Trial]:
    count = trials or 1000
    rng = XorShift64Star(seed)
    return [Trial(trial_max_pairs, (rng.randint(2, 8), rng.next_u64())) for _ in range(count)]


def suite_dirac(trials: int | None, seed: int) -> list[Trial]:
    count = trials or 500
    rng = XorShift64Star(seed)
    out = [Trial(trial_dirac, (200, rng.next_u64())) for _ in range(min(count, 20))]
    out += [Trial(trial_dirac, (rng.randint(10, 200), rng.next_u64())) for _ in range(count - len(out))]
    return out


def suite_lemma_h(trials: int | None, seed: int) -> list[Trial]:
    count = trials or 200
    rng = XorShift64Star(seed)
    out = []
    for i in range(count):
        ell = 1 + i % 3
        out.append(Trial(trial_lemma_h, (rng.randint(max(8, 4 * ell + 2), 60), ell, rng.next_u64())))
    return out


def suite_preserve(ks: tuple[int, ...]):
    def build(trials: int | None, seed: int) -> list[Trial]:
        count = trials or 100
        rng = XorShift64Star(seed)
        kinds = ("dirac", "poor", "rich", "adv-poor", "adv-rich")
        out = []
        for k in ks:
            lo = bound_one(k)
            for i in range(count):
                n = rng.randint(lo, 200)
                if k == 2:
                    n += n % 2
                    n = min(n, 200)
                out.append(Trial(trial_preserve, (kinds[i % len(kinds)], n, k, rng.next_u64())))
        return out

    return build


def suite_exact(trials: int | None, seed: int) -> list[Trial]:
    count = trials or 50
    rng = XorShift64Star(seed)
    return [Trial(trial_exact, (kap, ell, rng.next_u64())) for kap in (2, 3) for ell in (1, 2, 3) for _ in range(count)]


def suite_n7(trials: int | None, seed: int) -> list[Trial]:
    out = []
    for G in dirac_graphs(7):
        if is_k_connected(G, 2):
            out.append(Trial(trial_n7, (tuple(G.edges()),)))
    return out[:trials] if trials else out


def order6_failures() -> list[Graph]:
    """2-connected Dirac graphs of order 6 with no connectivity-preserving cycle."""
    return [G for G in dirac_graphs(6) if is_k_connected(G, 2) and not brute_preserving_exists(G, 2)]


def suite_ch(trials: int | None, seed: int) -> list[Trial]:
    return [Trial(trial_ch, nk) for nk in ((9, 2), (10, 3), (13, 4))]


def suite_kappa(trials: int | None, seed: int) -> list[Trial]:
    count = trials or 2000
    out = [Trial(trial_kappa, (tuple(G.edges()), G.n)) for G in atlas(6, 2)]
    rng = XorShift64Star(seed)
    out += [Trial(trial_kappa_random, (rng.randint(2, 8), rng.next_u64())) for _ in range(count)]
    return out


def suite_probe(trials: int | None, seed: int) -> list[Trial]:
    """Smallest-order probe for k = 2; reports counts per order, asserts nothing."""
    count = trials or 50
    rng = XorShift64Star(seed)
    return [Trial(trial_probe, (n, rng.next_u64())) for n in range(6, 11) for _ in range(count)]


SUITES: dict[str, Callable[[int | None, int], list[Trial]]] = {
    "thm6-exhaustive": suite_thm6,
    "thm7-oracle": suite_thm7,
    "dirac-extraction": suite_dirac,
    "lemma-h": suite_lemma_h,
    "preserve-k2..5": suite_preserve((2, 3, 4, 5)),
    "preserve-k2": suite_preserve((2,)),
    "preserve-k3": suite_preserve((3,)),
    "preserve-k4": suite_preserve((4,)),
    "preserve-k5": suite_preserve((5,)),
    "exact": suite_exact,
    "n7-tightness": suite_n7,
    "ch-tightness": suite_ch,
    "kappa-oracle": suite_kappa,
    "order-probe": suite_probe,
}


def run_suite(name: str, trials: int | None = None, seed: int = 0, jobs: int = 1) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    work = SUITES[name](trials, seed)
    res = SuiteResult(name)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_timed, work, chunksize=max(1, len(work) // (4 * jobs))))
    else:
        outcomes = [_timed(t) for t in work]
    for ok, info, dt in outcomes:
        res.times.append(dt)
        res.infos.append(info)
        if ok:
            res.passed += 1
        else:
            res.failed += 1
            res.failures.append(info)
    if name == "n7-tightness":
        fails6 = order6_failures()
        res.notes["order6_failing"] = len(fails6)
        res.notes["order6_witness"] = fails6[0].edges() if fails6 else None
    if name == "order-probe":
        for info in res.infos:
            tested, bad = res.notes.get(info["n"], (0, 0))
            res.notes[info["n"]] = (tested + 1, bad + (not info["exists"]))
    return res


__all__ = ["Trial", "SuiteResult", "SUITES", "run_suite", "atlas", "dirac_graphs", "order6_failures"]
