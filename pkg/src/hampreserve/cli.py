"""Command-line interface.

Exit codes: 0 success and verified, 1 verified failure or infeasible,
2 input error, 3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Sequence

from .connectivity import kappa, min_vertex_cut
from .errors import (
    BoundViolationError,
    DomainError,
    ExtractionFailure,
    InfeasibleError,
    InternalConsistencyError,
    NotApplicableError,
)
from .instances import FAMILIES, InstanceSpec
from .io import read_graph, write_edge_list
from .oracle import verify_certificate
from .pairs import decompose_into_pairs, exceptional_family, max_edge_disjoint_pairs
from .preserve import preserve_exact, preserve_many, preserve_one

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


@dataclass
class RunManifest:
    subcommand: str
    source: str
    outputs: list[str] = field(default_factory=list)
    seed: int | None = None
    flags: dict[str, Any] = field(default_factory=dict)
    wall_clock: float = 0.0
    result: dict[str, Any] = field(default_factory=dict)

    def write(self, path: str) -> None:
        with open(path, "w") as fh:
            json.dump(asdict(self), fh, indent=2)


def _default_seed() -> int:
    raw = os.environ.get("HAMPRESERVE_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"HAMPRESERVE_SEED must be an integer, got {raw!r}") from None


# --------------------------------------------------------------------------
# subcommands


def cmd_kappa(args, man: RunManifest) -> int:
    G = read_graph(args.input)
    k = kappa(G)
    print(f"kappa {k}")
    man.result["kappa"] = k
    if args.cut:
        if G.is_complete():
            print("complete graph: no vertex cut")
        else:
            cut = min_vertex_cut(G)
            print("cut " + " ".join(map(str, cut.W)))
            print(f"sides {len(cut.sideA)} {len(cut.sideB)}")
            man.result["cut"] = list(cut.W)
    return EXIT_OK


def cmd_pairs(args, man: RunManifest) -> int:
    G = read_graph(args.input)
    if args.decompose:
        try:
            dec = decompose_into_pairs(G)
        except DomainError as exc:
            print(f"not decomposable: {exc}")
            man.result["decomposable"] = False
            return EXIT_FAIL
        print(f"pairs {len(dec)}")
        for p in dec.pairs:
            (a, b), (c, d) = p.e1, p.e2
            print(f"{a}-{b} {c}-{d}")
        man.result["pairs"] = len(dec)
        return EXIT_OK
    fam = exceptional_family(G.edges())
    if fam is not None:
        print(f"exceptional: {fam}")
        man.result["exceptional"] = fam
        return EXIT_FAIL
    count, witness = max_edge_disjoint_pairs(G)
    print(f"max {count}")
    for p in witness:
        (a, b), (c, d) = p.e1, p.e2
        print(f"{a}-{b} {c}-{d}")
    man.result["max"] = count
    return EXIT_OK


def cmd_preserve(args, man: RunManifest) -> int:
    G = read_graph(args.input)
    if args.exact:
        cert = preserve_exact(G, args.ell, strict=args.strict)
        k = cert.kappa_before
    elif args.k is None:
        raise DomainError("--k is required unless --exact is given")
    elif args.ell == 1:
        cert = preserve_one(G, args.k, strict=args.strict, seed=args.seed)
        k = args.k
    else:
        cert = preserve_many(G, args.k, args.ell, strict=args.strict, seed=args.seed)
        k = args.k
    rep = verify_certificate(G, cert.to_dict(), k, exact=args.exact)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(cert.to_json())
        man.outputs.append(args.out)
    stages = [e["stage"] for e in cert.stage_log if e.get("stage") != "warning"]
    print("stages " + " ".join(stages))
    print(f"cycles {len(cert.cycles)} kappa_before {cert.kappa_before} kappa_after {cert.kappa_after}")
    man.result.update(verified=rep.passed, repaired=cert.repaired, kappa_after=cert.kappa_after)
    if rep.passed:
        print("verified")
        return EXIT_OK
    for c in rep.failures():
        print(f"FAILED {c.name}: {c.detail}")
    return EXIT_FAIL


def cmd_gen(args, man: RunManifest) -> int:
    spec = InstanceSpec(
        family=args.family,
        n=args.n,
        k=args.k,
        ell=args.ell,
        seed=args.seed,
        surplus=args.surplus,
        rich=args.rich,
    )
    G = spec.generate()
    if args.out:
        write_edge_list(G, args.out, [spec.header()])
        man.outputs.append(args.out)
        print(f"wrote {args.out}: n={G.n} m={G.m} min_degree={G.min_degree}")
    else:
        write_edge_list(G, sys.stdout, [spec.header()])
    man.result.update(n=G.n, m=G.m, min_degree=G.min_degree, digest=G.digest())
    return EXIT_OK


def cmd_experiment(args, man: RunManifest) -> int:
    from .suites import SUITES, run_suite

    if args.suite not in SUITES:
        raise DomainError(f"unknown suite {args.suite!r}; known: {', '.join(SUITES)}")
    res = run_suite(args.suite, trials=args.trials, seed=args.seed, jobs=args.jobs)
    print(res.summary())
    for key, val in res.notes.items():
        print(f"note {key}: {val}")
    for info in res.failures[:5]:
        print(f"failure: {info}")
    man.result.update(passed=res.passed, failed=res.failed, notes=res.notes)
    if args.report:
        with open(args.report, "w") as fh:
            json.dump({"suite": res.name, "passed": res.passed, "failed": res.failed,
                       "times": res.times, "failures": res.failures, "notes": res.notes}, fh, indent=2, default=list)
        man.outputs.append(args.report)
    return EXIT_OK if res.ok else EXIT_FAIL


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    seed = _default_seed()
    ap = argparse.ArgumentParser(prog="hampreserve", description=__doc__.splitlines()[0])
    ap.add_argument("--manifest", help="write a JSON run manifest here")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("kappa", help="vertex connectivity and a minimum cut")
    p.add_argument("input")
    p.add_argument("--cut", action="store_true", help="also print a minimum vertex cut")
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("pairs", help="edge-pair decomposition or maximum packing")
    p.add_argument("input")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--max", action="store_true", help="maximum packing (default)")
    mode.add_argument("--decompose", action="store_true", help="partition all edges into pairs")
    p.set_defaults(func=cmd_pairs)

    p = sub.add_parser("preserve", help="connectivity-preserving Hamiltonian cycles")
    p.add_argument("input")
    p.add_argument("--k", type=int)
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--exact", action="store_true", help="keep the connectivity exactly")
    p.add_argument("--strict", action="store_true", help="treat hypothesis warnings as errors")
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--out", help="certificate JSON path")
    p.set_defaults(func=cmd_preserve)

    p = sub.add_parser("gen", help="generate a seeded instance")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--ell", type=int, default=0)
    p.add_argument("--surplus", type=int, default=0)
    p.add_argument("--rich", action="store_true", help="barbell with hub crossings")
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("experiment", help="run an experiment suite")
    p.add_argument("suite")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--report", help="JSON report path")
    p.set_defaults(func=cmd_experiment)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    try:
        ap = build_parser()
        args = ap.parse_args(argv)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:  # argparse usage errors
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    man = RunManifest(
        subcommand=args.command,
        source=getattr(args, "input", None) or getattr(args, "family", None) or getattr(args, "suite", ""),
        seed=getattr(args, "seed", None),
        flags={k: v for k, v in vars(args).items() if k not in ("func", "manifest", "command")},
    )
    t0 = time.perf_counter()
    try:
        code = args.func(args, man)
    except InternalConsistencyError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        code = EXIT_INTERNAL
    except (BoundViolationError, NotApplicableError, ExtractionFailure, InfeasibleError) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        code = EXIT_FAIL
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_INPUT
    man.wall_clock = time.perf_counter() - t0
    man.result["exit"] = code
    if args.manifest:
        man.write(args.manifest)
    return code


if __name__ == "__main__":
    sys.exit(main())
