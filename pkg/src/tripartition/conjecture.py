"""Exhaustive search for edge tripartitions, all-edge condition reports and a
sampling scan over random (3,6)-tight graphs.
"""
from __future__ import annotations

import enum
import json
import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from .errors import EdgeNotPresent, GenerationStalled, InternalAssertionFailed
from .graph import Edge, EdgePartition, Graph, complete_graph, contract_vertices, norm_edge, serialize_graph
from .partition import verify_partition
from .rigidity import RigidityVerdict, is_rigid
from .sparsity import PebbleGame, check_sparsity

DEFAULT_BUDGET = 10 ** 7


class SearchStatus(enum.Enum):
    FOUND = "FOUND"
    NOT_FOUND = "NOT-FOUND"
    BUDGET_EXCEEDED = "BUDGET-EXCEEDED"


@dataclass(frozen=True)
class SearchResult:
    status: SearchStatus
    edge: Edge
    # assignment steps examined (one per edge placed into a part)
    tried: int
    witness: Optional[EdgePartition] = None
    reason: str = ""

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND


def search_partition_exhaustive(g: Graph, e: Edge, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Look for (S1, S2, S3) with sizes (n-1, n-2, n-3), e in S1, and
    (V, S1+S2), (V, S1+S3)/e, (V, S2+S3+e)/e all (2,3)-tight.

    Depth-first over edge placements. At each node every unplaced edge gets
    its allowed parts: an edge that is already dependent in one of the three
    partial graphs cannot join a part feeding that graph. The node is dropped
    when some edge has no allowed part or the edges with a single option
    overflow a part; otherwise the search branches on the edge with the
    fewest options (lowest index on ties), trying S1, S2, S3 in that order.
    The final graphs must be (2,3)-tight, so every pruned branch holds no
    solution and NOT_FOUND is exact. The order is fixed, hence so is the
    witness.
    """
    e = norm_edge(*e)
    if e not in g.edges:
        raise EdgeNotPresent(f"edge {e} not in graph")
    n = g.n
    if not g.is_simple():
        return SearchResult(SearchStatus.NOT_FOUND, e, 0, reason="multigraph")
    if n < 3 or g.m != 3 * n - 6:
        return SearchResult(SearchStatus.NOT_FOUND, e, 0, reason=f"|E|={g.m} != 3|V|-6={3 * n - 6}")

    relabel = contract_vertices(g, *e).relabel
    rest = sorted(set(g.edges) - {e})
    images = [(relabel[a], relabel[b]) for a, b in rest]
    # part -> the derived graphs its edges land in: 0 = S1+S2, 1 = (S1+S3)/e, 2 = (S2+S3)/e
    touches = {0: (0, 1), 1: (0, 2), 2: (1, 2)}
    capacity = [n - 2, n - 2, n - 3]

    root = [PebbleGame(n, 2, 3), PebbleGame(n - 1, 2, 3), PebbleGame(n - 1, 2, 3)]
    root[0].try_add(*e)
    assignment = [0] * len(rest)
    tried = 0
    exceeded = False

    def options(j: int, games: list) -> list:
        # an edge already dependent in derived graph gi can only go to the part avoiding gi
        blocked = set()
        for gi in range(3):
            u, v = rest[j] if gi == 0 else images[j]
            if not games[gi].independent(u, v):
                blocked.update(part for part in (0, 1, 2) if gi in touches[part])
        return [part for part in (0, 1, 2) if part not in blocked and capacity[part] > 0]

    def place(open_edges: list, games: list) -> bool:
        nonlocal tried, exceeded
        if not open_edges:
            return True
        best, best_opts = None, None
        forced = [0, 0, 0]
        for j in open_edges:
            opts = options(j, games)
            if not opts:
                return False
            if len(opts) == 1:
                forced[opts[0]] += 1
                if forced[opts[0]] > capacity[opts[0]]:
                    return False
            if best is None or len(opts) < len(best_opts):
                best, best_opts = j, opts
        remaining = [j for j in open_edges if j != best]
        a, b = rest[best]
        ia, ib = images[best]
        for part in best_opts:
            if tried >= budget:
                exceeded = True
                return False
            tried += 1
            trial = list(games)
            for gi in touches[part]:
                game = games[gi].copy()
                u, v = (a, b) if gi == 0 else (ia, ib)
                game.try_add(u, v)
                trial[gi] = game
            capacity[part] -= 1
            assignment[best] = part
            if place(remaining, trial):
                return True
            capacity[part] += 1
            if exceeded:
                return False
        return False

    if place(list(range(len(rest))), root):
        parts = [{e}, set(), set()]
        for edge, part in zip(rest, assignment):
            parts[part].add(edge)
        witness = EdgePartition(*parts)
        if not verify_partition(g, e, witness).ok:
            raise InternalAssertionFailed("search witness fails verification")
        return SearchResult(SearchStatus.FOUND, e, tried, witness)
    if exceeded:
        return SearchResult(SearchStatus.BUDGET_EXCEEDED, e, tried)
    return SearchResult(SearchStatus.NOT_FOUND, e, tried)


@dataclass
class ConditionReport:
    graph_id: str
    graph: Graph
    edges: list = field(default_factory=list)
    tightness_3_6: bool = False
    rigid_3: Optional[RigidityVerdict] = None

    @property
    def holds(self) -> bool:
        return bool(self.edges) and all(r.found for r in self.edges)

    @property
    def inconclusive(self) -> bool:
        return any(r.status is SearchStatus.BUDGET_EXCEEDED for r in self.edges)


def check_condition_all_edges(g: Graph, budget: int = DEFAULT_BUDGET, seed=0, graph_id: str = "") -> ConditionReport:
    report = ConditionReport(graph_id, g)
    for e in g.sorted_edges():
        report.edges.append(search_partition_exhaustive(g, e, budget))
    report.tightness_3_6 = check_sparsity(g, 3, 6).tight
    report.rigid_3 = is_rigid(g, 3, seed)
    return report


def random_tight_graph(n: int, seed=0, params=(3, 6), max_restarts: int = 50) -> Graph:
    """Random (k,l)-tight simple graph on ``n`` vertices.

    For (3,6) the graph starts as K4 on vertices 0..3 plus isolated vertices;
    otherwise it starts empty. Non-edges are proposed in random order and kept
    when the graph stays sparse. A run that exhausts the proposals below
    ``k n - l`` edges restarts with a fresh stream.
    """
    k, ell = params
    if n < 4 and tuple(params) == (3, 6):
        raise ValueError("need n >= 4")
    target = k * n - ell
    for restart in range(max_restarts):
        rng = random.Random(f"tight/{k},{ell}/{n}/{seed}/{restart}")
        edges = list(complete_graph(4).edges) if (k, ell) == (3, 6) else []
        present = set(edges)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in present]
        rng.shuffle(pairs)
        for pair in pairs:
            if len(edges) == target:
                break
            trial = Graph(n, tuple(edges) + (pair,))
            if check_sparsity(trial, k, ell).sparse:
                edges.append(pair)
        if len(edges) == target:
            return Graph(n, tuple(sorted(edges)))
    raise GenerationStalled(f"no ({k},{ell})-tight graph on {n} vertices after {max_restarts} restarts")


@dataclass
class ScanSummary:
    records: list = field(default_factory=list)
    graphs: list = field(default_factory=list)
    candidates: list = field(default_factory=list)

    def jsonl(self) -> str:
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.records)


def conjecture_scan(n_max: int, samples_per_n: int = 3, seed=0, budget: int = DEFAULT_BUDGET,
                    extra: Iterable[tuple] = (), candidates_dir=None, timing: bool = False) -> ScanSummary:
    """Sample (3,6)-tight graphs for n = 4..n_max and test the tripartition
    condition on every edge.

    ``extra`` adds ``(graph_id, Graph)`` pairs to the sample. A graph goes to
    ``candidates`` when its (3,6)-tightness and the all-edge condition
    disagree; with ``candidates_dir`` each one is also written as
    ``<graph_id>.grf``. ``elapsed_ms`` is ``None`` unless ``timing`` is set,
    which keeps the records byte-stable.
    """
    graphs = []
    for n in range(4, n_max + 1):
        seen = set()
        for s in range(samples_per_n):
            g = random_tight_graph(n, seed=f"{seed}/{s}")
            if g.edges in seen:
                continue
            seen.add(g.edges)
            graphs.append((f"n{n}-s{s}", g))
    graphs.extend(extra)

    summary = ScanSummary()
    for gid, g in graphs:
        report = ConditionReport(gid, g)
        for e in g.sorted_edges():
            start = time.perf_counter()
            res = search_partition_exhaustive(g, e, budget)
            elapsed = (time.perf_counter() - start) * 1000
            report.edges.append(res)
            summary.records.append({
                "graph": gid,
                "n": g.n,
                "edges": [list(a) for a in g.sorted_edges()],
                "edge": list(e),
                "exists": res.found,
                "status": res.status.value,
                "tried": res.tried,
                "elapsed_ms": round(elapsed, 3) if timing else None,
            })
        report.tightness_3_6 = check_sparsity(g, 3, 6).tight
        report.rigid_3 = is_rigid(g, 3, seed)
        summary.graphs.append(report)
        if not report.inconclusive and report.holds != report.tightness_3_6:
            summary.candidates.append(report)
            if candidates_dir is not None:
                path = Path(candidates_dir)
                path.mkdir(parents=True, exist_ok=True)
                (path / f"{gid}.grf").write_text(serialize_graph(g))
    return summary
