import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_condition, brute_laman, contract
from tripartition.errors import EdgeNotPresent, NotAPartition, NotMinimallyRigid, NotSpanningTree
from tripartition.graph import (
    EdgePartition,
    banana_fixture_partitions,
    complete_graph,
    double_banana,
    henneberg_chain,
    is_spanning_tree,
)
from tripartition.partition import (
    EliminationWorkspace,
    derived_graphs,
    lemma1_partition,
    lemma2_spanning_tree,
    partition_for_edge,
    verify_partition,
)


def check_with_oracle(g, e, part):
    return brute_condition(g.n, e, set(part.s1), set(part.s2), set(part.s3))


@pytest.mark.parametrize("e", complete_graph(4).sorted_edges())
def test_k4_every_edge(e):
    g = complete_graph(4)
    part = partition_for_edge(g, e, seed=0)
    assert part.sizes() == (3, 2, 1)
    assert verify_partition(g, e, part).ok
    assert check_with_oracle(g, e, part)


def test_k4_edge_01_matches_cli_example():
    part = partition_for_edge(complete_graph(4), (0, 1), seed=0)
    assert (0, 1) in part.s1 and len(part.s1) == 3


@pytest.mark.parametrize("pick", range(9))
@pytest.mark.parametrize("route", ["auto", "corrected"])
def test_five_vertices_every_edge(pick, route):
    g = henneberg_chain(5, 0)
    e = g.sorted_edges()[pick]
    part = partition_for_edge(g, e, seed=1, route=route)
    assert check_with_oracle(g, e, part)


@settings(max_examples=40, deadline=None)
@given(st.integers(5, 9), st.integers(0, 10 ** 6), st.integers(0, 100), st.integers(0, 2 ** 32))
def test_random_henneberg_graphs(n, gseed, pick, seed):
    g = henneberg_chain(n, gseed)
    e = g.sorted_edges()[pick % g.m]
    ws = EliminationWorkspace()
    part = partition_for_edge(g, e, seed=seed, workspace=ws)
    assert check_with_oracle(g, e, part)
    assert ws.tree_route in ("proof", "corrected")
    assert ws.split_route in ("proof", "corrected")


def test_deterministic():
    g = henneberg_chain(8, 4)
    e = g.sorted_edges()[5]
    assert partition_for_edge(g, e, seed=3) == partition_for_edge(g, e, seed=3)


@settings(max_examples=20, deadline=None)
@given(st.integers(5, 9), st.integers(0, 10 ** 6), st.integers(0, 100))
def test_spanning_tree_step(n, gseed, pick):
    g = henneberg_chain(n, gseed)
    e = g.sorted_edges()[pick % g.m]
    f = lemma2_spanning_tree(g, e, seed=gseed)
    assert e in f
    assert is_spanning_tree(n, f)
    rest = [a for a in g.edges if a not in f] + [e]
    assert brute_laman(*contract(n, rest, e))


@settings(max_examples=20, deadline=None)
@given(st.integers(5, 9), st.integers(0, 10 ** 6), st.integers(0, 100))
def test_split_step(n, gseed, pick):
    g = henneberg_chain(n, gseed)
    e = g.sorted_edges()[pick % g.m]
    f = lemma2_spanning_tree(g, e, seed=gseed)
    split = lemma1_partition(g, f, e, seed=gseed)
    assert (len(split.r1), len(split.r2)) == (n - 2, n - 3)
    assert split.r1 | split.r2 == set(g.edges) - f
    assert brute_laman(n, list(f | split.r1))
    assert brute_laman(*contract(n, list(f | split.r2), e))


def test_split_step_rejects_bad_tree():
    g = henneberg_chain(6, 2)
    e = g.sorted_edges()[0]
    with pytest.raises(NotSpanningTree):
        lemma1_partition(g, [e], e)
    f = lemma2_spanning_tree(g, e)
    other = next(a for a in g.sorted_edges() if a not in f)
    with pytest.raises(NotSpanningTree):
        lemma1_partition(g, f, other)


def test_workspace_records_elimination():
    g = henneberg_chain(7, 11)
    e = g.sorted_edges()[3]
    ws = EliminationWorkspace()
    part = partition_for_edge(g, e, seed=0, workspace=ws)
    n = g.n
    tree = len(part.s1)
    assert ws.x.shape == (3 * n - 6, 3 * n - 6)
    assert ws.x11.shape == (tree, tree)
    assert ws.y.shape == (3 * n - 6 - tree, 3 * n - 6 - tree)
    lower_left = ws.x_eliminated.submatrix(range(tree, ws.x.rows), range(tree))
    assert lower_left.is_zero()
    p = ws.realization
    assert p.base[p.z] == (0, 0, 0)


def test_direct_route_gap_is_repaired():
    # the direct split step yields a contracted graph that is not (2,3)-tight here
    g = henneberg_chain(6, 0)
    ws = EliminationWorkspace()
    part = partition_for_edge(g, (0, 2), seed=0, workspace=ws)
    assert ws.split_route == "corrected"
    assert any(gap.startswith("split") for gap in ws.gaps)
    assert verify_partition(g, (0, 2), part).ok
    with pytest.raises(AssertionError):
        partition_for_edge(g, (0, 2), seed=0, route="proof")


def test_double_banana_refused():
    g = double_banana()
    for e in g.sorted_edges()[:3]:
        with pytest.raises(NotMinimallyRigid):
            partition_for_edge(g, e)


def test_other_refusals():
    with pytest.raises(NotMinimallyRigid):
        partition_for_edge(complete_graph(5), (0, 1))
    with pytest.raises(NotMinimallyRigid):
        partition_for_edge(complete_graph(3), (0, 1))
    g = henneberg_chain(6, 0)
    missing = next((u, v) for u in range(6) for v in range(u + 1, 6) if not g.has_edge(u, v))
    with pytest.raises(EdgeNotPresent):
        partition_for_edge(g, missing)
    with pytest.raises(ValueError):
        partition_for_edge(complete_graph(4), (0, 1), route="sideways")


def test_banana_fixtures_verify():
    g = double_banana()
    for e, part in banana_fixture_partitions():
        report = verify_partition(g, e, part)
        assert report.ok
        assert report.sizes == (7, 6, 5)
        assert check_with_oracle(g, e, part)
        graphs = derived_graphs(g, e, part)
        assert [h.n for h in graphs] == [8, 7, 7]


def test_verify_reports_each_condition():
    g = double_banana()
    e, part = banana_fixture_partitions()[0]
    bad = part.swapped(1, 2)
    report = verify_partition(g, e, bad)
    assert not report.ok and not report.sizes_ok
    data = report.to_json()
    assert data["condition1"]["sizes"] == [7, 5, 6]
    assert data["condition2"]["ok"]
    moved = EdgePartition(part.s1 - {e}, part.s2 | {e}, part.s3)
    assert not verify_partition(g, e, moved).membership_ok


def test_verify_rejects_non_partitions():
    g = complete_graph(4)
    with pytest.raises(NotAPartition):
        verify_partition(g, (0, 1), EdgePartition({(0, 1)}, set(), set()))
