import random
import time

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_condition, brute_partition_exists, brute_sparse
from tripartition.conjecture import (
    SearchStatus,
    check_condition_all_edges,
    conjecture_scan,
    random_tight_graph,
    search_partition_exhaustive,
)
from tripartition.errors import EdgeNotPresent
from tripartition.graph import Graph, complete_graph, double_banana, henneberg_chain, parse_graph, path_graph
from tripartition.partition import partition_for_edge


def test_k4_found():
    res = search_partition_exhaustive(complete_graph(4), (0, 1))
    assert res.found
    w = res.witness
    assert brute_condition(4, (0, 1), set(w.s1), set(w.s2), set(w.s3))


def test_path_not_found_fast():
    start = time.perf_counter()
    res = search_partition_exhaustive(path_graph(4), (0, 1))
    assert time.perf_counter() - start < 0.01
    assert res.status is SearchStatus.NOT_FOUND
    assert res.tried == 0


def test_missing_edge():
    with pytest.raises(EdgeNotPresent):
        search_partition_exhaustive(path_graph(4), (0, 3))


def test_multigraph_not_found():
    g = Graph(4, complete_graph(4).edges[:-1] + ((0, 1),))
    assert search_partition_exhaustive(g, (0, 1)).status is SearchStatus.NOT_FOUND


def test_budget():
    g = double_banana()
    res = search_partition_exhaustive(g, (0, 2), budget=5)
    assert res.status is SearchStatus.BUDGET_EXCEEDED
    assert res.tried == 5


def test_deterministic_witness():
    g = henneberg_chain(7, 2)
    e = g.sorted_edges()[4]
    assert search_partition_exhaustive(g, e) == search_partition_exhaustive(g, e)


def small_graphs_with_3n_minus_6_edges():
    """Graphs on 5 and 6 vertices with exactly 3n - 6 edges, tight or not."""
    out = [henneberg_chain(5, 0), henneberg_chain(6, 3)]
    # K5 plus a degree-2 vertex: K5 alone breaks the (3,6) count
    k5 = complete_graph(5).edges
    out.append(Graph(6, k5 + ((0, 5), (1, 5))))
    # octahedron
    out.append(Graph(6, tuple(a for a in complete_graph(6).edges if a not in {(0, 1), (2, 3), (4, 5)})))
    rng = random.Random(0)
    pairs = [(u, v) for u in range(6) for v in range(u + 1, 6)]
    for _ in range(4):
        out.append(Graph(6, tuple(sorted(rng.sample(pairs, 12)))))
    return out


@pytest.mark.parametrize("g", small_graphs_with_3n_minus_6_edges(), ids=lambda g: f"n{g.n}-{hash(g.edges) % 1000}")
def test_search_agrees_with_enumeration(g):
    for e in g.sorted_edges():
        res = search_partition_exhaustive(g, e)
        assert res.found == brute_partition_exists(g.n, g.edges, e)
        if res.found:
            w = res.witness
            assert brute_condition(g.n, e, set(w.s1), set(w.s2), set(w.s3))


@settings(max_examples=15, deadline=None)
@given(st.integers(5, 8), st.integers(0, 10 ** 6), st.integers(0, 100))
def test_constructive_and_exhaustive_agree(n, gseed, pick):
    g = henneberg_chain(n, gseed)
    e = g.sorted_edges()[pick % g.m]
    part = partition_for_edge(g, e, seed=gseed)
    res = search_partition_exhaustive(g, e)
    assert res.found
    assert brute_condition(n, e, set(part.s1), set(part.s2), set(part.s3))


@settings(max_examples=30, deadline=None)
@given(st.integers(4, 9), st.integers(0, 10 ** 6))
def test_random_tight_graph(n, seed):
    g = random_tight_graph(n, seed)
    assert g.m == 3 * n - 6 and g.is_simple()
    assert brute_sparse(n, g.edges, 3, 6)
    assert g == random_tight_graph(n, seed)


def test_random_tight_graph_other_params():
    g = random_tight_graph(6, 1, params=(2, 3))
    assert g.m == 9 and brute_sparse(6, g.edges, 2, 3)
    with pytest.raises(ValueError):
        random_tight_graph(3, 0)


def test_condition_report():
    rep = check_condition_all_edges(complete_graph(4), graph_id="k4")
    assert rep.holds and rep.tightness_3_6 and not rep.inconclusive
    assert len(rep.edges) == 6
    assert rep.rigid_3.rigid


def test_scan_n4_is_k4_only():
    summary = conjecture_scan(4, samples_per_n=3)
    assert [r.graph_id for r in summary.graphs] == ["n4-s0"]
    assert summary.graphs[0].graph == complete_graph(4)
    assert summary.graphs[0].holds
    assert summary.candidates == []
    assert len(summary.records) == 6


def test_scan_records_are_stable(tmp_path):
    a = conjecture_scan(6, samples_per_n=2, seed=3, candidates_dir=tmp_path)
    b = conjecture_scan(6, samples_per_n=2, seed=3)
    assert a.jsonl() == b.jsonl()
    rec = a.records[0]
    assert set(rec) == {"graph", "n", "edges", "edge", "exists", "status", "tried", "elapsed_ms"}
    assert rec["elapsed_ms"] is None
    assert conjecture_scan(4, timing=True).records[0]["elapsed_ms"] >= 0
    # every sampled graph is tight and satisfies the condition, so nothing is written
    assert list(tmp_path.iterdir()) == []


def test_scan_with_banana():
    summary = conjecture_scan(4, extra=[("banana", double_banana())])
    rep = summary.graphs[-1]
    assert rep.graph_id == "banana"
    assert rep.holds and rep.tightness_3_6
    assert not rep.rigid_3.rigid
    assert summary.candidates == []


def test_scan_skips_inconclusive_graphs():
    summary = conjecture_scan(4, budget=1, extra=[("cut", random_tight_graph(7, 0))])
    assert summary.graphs[-1].inconclusive
    assert summary.candidates == []


def test_scan_writes_candidates(tmp_path, monkeypatch):
    import tripartition.conjecture as conj
    from tripartition.sparsity import SparsityParams, SparsityResult, Status

    # pretend K4 is not (3,6)-tight so it disagrees with the all-edge condition
    monkeypatch.setattr(conj, "check_sparsity",
                        lambda g, k, ell: SparsityResult(Status.SPARSE, SparsityParams(k, ell)))
    summary = conjecture_scan(4, candidates_dir=tmp_path / "out")
    assert [r.graph_id for r in summary.candidates] == ["n4-s0"]
    written = parse_graph((tmp_path / "out" / "n4-s0.grf").read_text())
    assert written == complete_graph(4)
