"""Acceptance checks, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL ...`` line (shown even
under output capture). Run ``pytest tests/test_acceptance.py -v`` or
``python tests/test_acceptance.py``.
"""
import json
import random
import subprocess
import sys
import time

import networkx as nx
import pytest

from oracles import brute_split_exists, brute_status, sym_det
from tripartition.cli import main
from tripartition.conjecture import SearchStatus, search_partition_exhaustive
from tripartition.errors import NotMinimallyRigid
from tripartition.graph import Graph, cone, double_banana, henneberg_chain, path_graph, serialize_graph
from tripartition.linalg import ExactMatrix, laplace_split
from tripartition.partition import partition_for_edge, verify_partition
from tripartition.rigidity import is_rigid
from tripartition.sparsity import check_sparsity


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail
    return emit


def test_criterion_1_double_banana(report, capsys):
    start = time.perf_counter()
    code = main(["banana", "--seed", "0", "--format", "json"])
    data = json.loads(capsys.readouterr().out)
    elapsed = time.perf_counter() - start
    ranks = [r["rank"] for r in data["rank"]]
    found = sum(s["status"] == "FOUND" for s in data["search"])
    ok = (code == 0 and data["tight_3_6"] and ranks == [17, 17, 17]
          and not any(r["rigid"] for r in data["rank"])
          and all(f["ok"] for f in data["fixtures"]) and found == 18 and elapsed < 300)
    report(1, ok, f"tight={data['tight_3_6']} ranks={ranks} fixtures={[f['ok'] for f in data['fixtures']]} "
                  f"search={found}/18 time={elapsed:.1f}s")


def test_criterion_2_constructive_suite(report):
    start = time.perf_counter()
    passed = 0
    for s in range(100):
        rng = random.Random(s)
        n = rng.randint(5, 12)
        g = henneberg_chain(n, s)
        e = rng.choice(g.sorted_edges())
        part = partition_for_edge(g, e, seed=s)
        passed += verify_partition(g, e, part).ok
    elapsed = time.perf_counter() - start
    report(2, passed == 100 and elapsed < 600, f"{passed}/100 verified in {elapsed:.1f}s")


def test_criterion_3_laplace_split_oracle(report):
    checked = agree = 0
    for s in range(50):
        rng = random.Random(s)
        n = rng.randint(4, 8)
        while True:
            rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
            if sym_det(rows) != 0:
                break
        for size in range(1, n):
            c = sorted(rng.sample(range(n), size))
            r = laplace_split(ExactMatrix(rows), c)
            cc = [j for j in range(n) if j not in c]
            rc = [i for i in range(n) if i not in r]
            valid = (len(r) == size
                     and sym_det([[rows[i][j] for j in c] for i in r]) != 0
                     and sym_det([[rows[i][j] for j in cc] for i in rc]) != 0)
            checked += 1
            agree += valid and brute_split_exists(rows, c)
    report(3, agree == checked, f"{agree}/{checked} (matrix, |C|) pairs agree")


def _atlas_graphs():
    for h in nx.graph_atlas_g():
        if 1 <= h.number_of_nodes() <= 6:
            yield Graph(h.number_of_nodes(), tuple(h.edges()))


def _random_graphs(count, max_n, seed):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(2, max_n)
        p = rng.random()
        yield Graph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p))


def test_criterion_4_pebble_game_oracle(report):
    graphs = list(_atlas_graphs())
    six = sum(g.n == 6 for g in graphs)
    graphs += list(_random_graphs(500, 8, seed=4))
    checked = agree = 0
    for g in graphs:
        for k, ell in ((2, 3), (3, 6)):
            checked += 1
            agree += check_sparsity(g, k, ell).status.value == brute_status(g.n, g.edges, k, ell)
    report(4, agree == checked and six == 156,
           f"{agree}/{checked} verdicts agree ({six} six-vertex atlas graphs, {len(graphs)} graphs)")


def test_criterion_5_coning(report):
    rng = random.Random(5)
    agree, worst = 0, 0.0
    for i in range(50):
        n = rng.randint(3, 8)
        p = rng.uniform(0.3, 0.95)
        g = Graph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p))
        planar, spatial = is_rigid(g, 2, seed=i), is_rigid(cone(g), 3, seed=i)
        agree += planar.rigid == spatial.rigid
        worst = max(worst, planar.failure_bound, spatial.failure_bound)
    report(5, agree == 50 and worst < 2.0 ** -39, f"{agree}/50 agree, worst flexible bound {worst:.2e}")


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "tripartition", *argv], capture_output=True, check=False).stdout


def test_criterion_6_determinism(report, tmp_path):
    g = henneberg_chain(9, 6)
    u, v = g.sorted_edges()[10]
    grf = tmp_path / "g.grf"
    grf.write_text(serialize_graph(g))
    runs = {
        "partition": ["partition", "--input", str(grf), "--edge", f"{u},{v}", "--seed", "11", "--format", "json"],
        "scan": ["scan", "--n-max", "6", "--samples", "2", "--seed", "6", "--format", "json"],
    }
    outputs = {name: {_cli(*argv) for _ in range(10)} for name, argv in runs.items()}
    stable = all(len(outs) == 1 and next(iter(outs)) for outs in outputs.values())
    report(6, stable, " ".join(f"{name}: {len(outs)} distinct output(s) over 10 runs"
                               for name, outs in outputs.items()))


def test_criterion_7_negative_paths(report):
    try:
        partition_for_edge(double_banana(), (0, 2))
        refused = False
    except NotMinimallyRigid:
        refused = True
    best = float("inf")
    for _ in range(20):
        start = time.perf_counter()
        res = search_partition_exhaustive(path_graph(4), (1, 2))
        best = min(best, time.perf_counter() - start)
    ok = refused and res.status is SearchStatus.NOT_FOUND and best < 1e-3
    report(7, ok, f"banana refused={refused}, P4 search {res.status.value} in {best * 1e6:.0f}us")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
