from __future__ import annotations

import json

import pytest

from hampreserve.cli import main
from hampreserve.graph import Graph
from hampreserve.instances import gen_barbell_dirac
from hampreserve.io import read_graph, write_edge_list


def run(capsys, *argv):
    code = main(list(map(str, argv)))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, G in {
        "c6": Graph.cycle(6),
        "c4": Graph.cycle(4),
        "k3": Graph.complete(3),
        "k7": Graph.complete(7),
        "star": Graph.from_edges(5, [(0, i) for i in range(1, 5)]),
    }.items():
        paths[name] = tmp_path / f"{name}.txt"
        write_edge_list(G, paths[name])
    return paths


def test_kappa(capsys, files, tmp_path):
    code, out, _ = run(capsys, "kappa", files["c6"])
    assert code == 0 and out.splitlines()[0] == "kappa 2"
    bar = tmp_path / "bar.txt"
    write_edge_list(gen_barbell_dirac(24, 3, seed=1), bar)
    code, out, _ = run(capsys, "kappa", bar, "--cut")
    lines = out.splitlines()
    assert lines[0] == "kappa 3" and len(lines[1].split()) == 4


def test_malformed_input_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n0 q\n")
    code, _, err = run(capsys, "kappa", bad)
    assert code == 2 and "line 2" in err
    assert run(capsys, "kappa", tmp_path / "missing.txt")[0] == 2


def test_pairs(capsys, files):
    code, out, _ = run(capsys, "pairs", files["c4"], "--decompose")
    assert code == 0 and out.startswith("pairs 2")
    code, out, _ = run(capsys, "pairs", files["star"], "--max")
    assert code == 0 and out.strip() == "max 0"
    code, out, _ = run(capsys, "pairs", files["k3"], "--max")
    assert code == 1 and out.strip() == "exceptional: K3 ∪ (n−3)K1"


def test_preserve_k7(capsys, files, tmp_path):
    cert = tmp_path / "cert.json"
    code, out, _ = run(capsys, "preserve", files["k7"], "--k", 2, "--out", cert)
    assert code == 0 and "verified" in out
    assert json.loads(cert.read_text())["schema"] == "preserve-cert/1"


def test_preserve_barbell(capsys, tmp_path):
    path = tmp_path / "b.txt"
    write_edge_list(gen_barbell_dirac(40, 2, seed=0), path)
    code, out, _ = run(capsys, "preserve", path, "--k", 2)
    assert code == 0 and "stages" in out


def test_preserve_exact(capsys, tmp_path):
    path = tmp_path / "b.txt"
    write_edge_list(gen_barbell_dirac(60, 3, seed=0), path)
    code, out, _ = run(capsys, "preserve", path, "--exact", "--ell", 2)
    assert code == 0 and "kappa_before 3 kappa_after 3" in out


def test_preserve_infeasible_exit_1(capsys, files):
    code, _, err = run(capsys, "preserve", files["c6"], "--k", 3)
    assert code == 1 and "infeasible" in err


def test_preserve_bound_warning_text(capsys, files):
    code, _, err = run(capsys, "preserve", files["k7"], "--k", 2, "--strict")
    assert code == 1 and "n = 7 >= 24" in err


@pytest.mark.parametrize(
    "argv,check",
    [
        (["dirac", "--n", 50, "--seed", 1], lambda G: G.n == 50 and G.min_degree >= 25),
        (["barbell", "--n", 24, "--k", 3], lambda G: G.n == 24),
        (["ch-tight", "--n", 9, "--k", 2], lambda G: G.m == 20),
    ],
)
def test_gen(capsys, tmp_path, argv, check):
    out = tmp_path / "g.txt"
    code, _, _ = run(capsys, "gen", *argv, "--out", out)
    assert code == 0
    assert out.read_text().startswith("# hampreserve instance")
    assert check(read_graph(out))


def test_gen_infeasible_exit_2(capsys):
    assert run(capsys, "gen", "barbell", "--n", 10, "--k", 3)[0] == 2


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("HAMPRESERVE_SEED", "5")
    _, out, _ = run(capsys, "gen", "dirac", "--n", 12)
    assert "seed=5" in out.splitlines()[0]
    monkeypatch.setenv("HAMPRESERVE_SEED", "five")
    assert run(capsys, "gen", "dirac", "--n", 12)[0] == 2


def test_experiment(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "experiment", "ch-tightness", "--report", report)
    assert code == 0 and "pass     3" in out
    assert json.loads(report.read_text())["failed"] == 0
    assert run(capsys, "experiment", "nope")[0] == 2


def test_manifest_is_reproducible(capsys, tmp_path):
    outs = []
    for i in range(2):
        man = tmp_path / f"m{i}.json"
        g = tmp_path / f"g{i}.txt"
        run(capsys, "--manifest", man, "gen", "dirac", "--n", 30, "--seed", 3, "--out", g)
        outs.append((json.loads(man.read_text())["result"], g.read_text()))
    assert outs[0] == outs[1]


def test_usage_error_exit_2(capsys):
    assert run(capsys, "preserve")[0] == 2
