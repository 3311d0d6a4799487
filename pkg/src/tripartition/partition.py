"""Constructive edge tripartitions for minimally 3-rigid graphs.

For an edge e = xy the construction picks z (smallest id outside {x, y}),
samples one normalized realization p with p(z) = 0 and p(x) - p(y) on the
first axis, and then runs two steps.

Tree step. Z is the rigidity matrix without columns (x,3), (y,3), (z,*),
plus an extra row holding a single 1 in column (y,2). Z is split along its
second-coordinate columns; the rows landing there, with the extra row
swapped back for e, are the tree F.

Split step. X is the rigidity matrix without columns (x,3), (y,2), (y,3),
(z,*), tree rows on top. Eliminating the lower-left block leaves the Schur
complement Y = [Y1 Y2] on the non-tree rows; splitting Y along Y1 gives
S2 (rows on Y1) and S3 (the rest).

Both steps are checked with the (2,3) pebble game. The matrices above do not
always encode the contracted graph faithfully: after merging x into y the
first-coordinate entries of x's edges are still measured from p(x), and the
extra row of Z is not the incidence row of e. So a valid row split can give
a cycle for F, or a contracted graph that is not (2,3)-tight. When that
happens the ``"corrected"`` route rebuilds the contracted side from a real
realization of G/e:

* tree step: rows E - e, columns = incidence of G/e (random row scaling,
  column z dropped) next to the planar rigidity matrix of G/e at
  (p1, p3) with (z,1), (z,3), (xy,3) dropped. A row split gives a spanning
  tree of G/e and a planar basis of its complement.
* split step: keep Y1, replace Y2 by the Schur complement of the planar
  rigidity matrix of G/e (tree rows F - e eliminated), scale the Y1 rows by
  random integers so no two terms of the Laplace expansion cancel, and
  split.

``route="auto"`` (default) runs the direct construction first and falls back
per step; the workspace records which route produced each part.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import (
    DegenerateSample,
    EdgeNotPresent,
    InternalAssertionFailed,
    NotAPartition,
    NotMinimallyRigid,
    NotSpanningTree,
    Singular,
)
from .graph import Edge, EdgePartition, Graph, contract_vertices, is_spanning_tree, norm_edge
from .linalg import ExactMatrix, det_exact, invert_exact, laplace_split
from .rigidity import (
    DEFAULT_COORD_BOUND,
    MAX_RESAMPLES,
    NormalizedRealization,
    is_minimally_rigid,
    rigidity_matrix,
    sample_normalized,
)
from .sparsity import is_minimally_2_rigid_combinatorial

EXTRA_ROW = "extra"
ROUTES = ("auto", "proof", "corrected")
_SCALING_ATTEMPTS = 4


class _Degenerate(Exception):
    """The sampled realization misses a genericity condition; resample."""


class _ProofGap(Exception):
    """The direct construction produced a set that fails the combinatorial check."""


@dataclass(frozen=True)
class Lemma1Split:
    r1: frozenset
    r2: frozenset


@dataclass
class EliminationWorkspace:
    """Intermediate matrices of one construction, kept for inspection."""

    x: Optional[ExactMatrix] = None
    x11: Optional[ExactMatrix] = None
    x12: Optional[ExactMatrix] = None
    x13: Optional[ExactMatrix] = None
    x21: Optional[ExactMatrix] = None
    x22: Optional[ExactMatrix] = None
    x23: Optional[ExactMatrix] = None
    x_eliminated: Optional[ExactMatrix] = None
    y: Optional[ExactMatrix] = None
    z: Optional[ExactMatrix] = None
    realization: Optional[NormalizedRealization] = None
    tree_route: Optional[str] = None
    split_route: Optional[str] = None
    gaps: list = field(default_factory=list)


def _edge_in(g: Graph, e: Edge) -> Edge:
    e = norm_edge(*e)
    if e not in g.edges:
        raise EdgeNotPresent(f"edge {e} not in graph")
    return e


def _require_minimally_rigid(g: Graph, seed) -> None:
    if not g.is_simple():
        raise NotMinimallyRigid("graph has parallel edges")
    if g.n < 4:
        raise NotMinimallyRigid("need at least 4 vertices")
    verdict = is_minimally_rigid(g, 3, seed)
    if not verdict.minimal:
        raise NotMinimallyRigid(f"not minimally 3-rigid: {verdict.summary()}, |E|={g.m}")


def _kept_columns(n: int, deleted: set) -> dict:
    """Remaining ``(v, i)`` labels per coordinate, in column order."""
    return {i: [(v, i) for v in range(n) if (v, i) not in deleted] for i in (1, 2, 3)}


def _contracted_rows(g: Graph, e: Edge, p: NormalizedRealization, edges) -> tuple:
    """Planar rigidity rows of ``edges`` in G/e at (p1, p3).

    The merged vertex sits at the point of the smaller endpoint. Returns
    ``(rows as {(v, i): value}, relabel map)``.
    """
    relabel = contract_vertices(g, *e).relabel
    keep = min(e)

    def point(v):
        pt = p.base[keep if v in e else v]
        return (pt[0], pt[2])

    rows = []
    for a, b in edges:
        pa, pb = point(a), point(b)
        row = {}
        for c, (ca, cb) in zip((1, 3), zip(pa, pb)):
            row[(relabel[a], c)] = ca - cb
            row[(relabel[b], c)] = cb - ca
        rows.append(row)
    return rows, relabel


# -- tree step ---------------------------------------------------------------

def _tree_proof(g: Graph, e: Edge, p: NormalizedRealization, ws: EliminationWorkspace) -> frozenset:
    x, y, z = p.x, p.y, p.z
    rows = [e] + sorted(set(g.edges) - {e})
    r = rigidity_matrix(g, p.base, rows)
    keep = _kept_columns(g.n, {(x, 3), (y, 3), (z, 1), (z, 2), (z, 3)})
    labels = keep[1] + keep[2] + keep[3]
    body = r.submatrix(range(r.rows), [r.col_index(c) for c in labels]).tolist()
    extra = [int(c == (y, 2)) for c in labels]
    zmat = ExactMatrix(body + [extra], rows + [EXTRA_ROW], labels)
    ws.z = zmat
    if det_exact(zmat) == 0:
        raise _Degenerate("Z is singular")
    chosen = {zmat.row_labels[i] for i in laplace_split(zmat, [zmat.col_index(c) for c in keep[2]])}
    # forced by the zero pattern: the extra row vanishes off the second block, e's row on it
    if EXTRA_ROW not in chosen or e in chosen:
        raise InternalAssertionFailed("row split ignores the zero pattern of Z")
    f = frozenset(chosen - {EXTRA_ROW}) | {e}
    if not is_spanning_tree(g.n, f):
        raise _ProofGap("selected rows do not form a spanning tree")
    if not _tree_complement_ok(g, e, f):
        raise _ProofGap("(V, (E - F) + e)/e is not minimally 2-rigid")
    return f


def _tree_complement_ok(g: Graph, e: Edge, f: frozenset) -> bool:
    rest = sorted((set(g.edges) - f) | {e})
    return is_minimally_2_rigid_combinatorial(contract_vertices(g.with_edges(rest), *e))


def _tree_corrected(g: Graph, e: Edge, p: NormalizedRealization, seed) -> frozenset:
    n = g.n
    rest = sorted(set(g.edges) - {e})
    rows, relabel = _contracted_rows(g, e, p, rest)
    zc, merged = relabel[p.z], relabel[e[0]]
    inc_cols = [v for v in range(n - 1) if v != zc]
    rig_cols = [(v, 1) for v in range(n - 1) if v != zc] + [(v, 3) for v in range(n - 1) if v not in (zc, merged)]
    for attempt in range(_SCALING_ATTEMPTS):
        rng = random.Random(f"tree-scaling/{seed}/{attempt}")
        data = []
        for (a, b), row in zip(rest, rows):
            t = rng.randint(1, DEFAULT_COORD_BOUND)
            a2, b2 = relabel[a], relabel[b]
            data.append([t * ((v == a2) - (v == b2)) for v in inc_cols] + [row.get(c, 0) for c in rig_cols])
        mat = ExactMatrix(data, cols=len(inc_cols) + len(rig_cols))
        if det_exact(mat) != 0:
            f = frozenset(rest[i] for i in laplace_split(mat, range(len(inc_cols)))) | {e}
            if not is_spanning_tree(n, f) or not _tree_complement_ok(g, e, f):
                raise InternalAssertionFailed("corrected tree step failed its own check")
            return f
    raise InternalAssertionFailed("no tree/planar-basis split of E - e found")


def _tree_step(g, e, p, ws, seed, route) -> frozenset:
    if route in ("auto", "proof"):
        try:
            f = _tree_proof(g, e, p, ws)
            ws.tree_route = "proof"
            return f
        except _ProofGap as gap:
            if route == "proof":
                raise InternalAssertionFailed(f"tree step: {gap}") from None
            ws.gaps.append(f"tree: {gap}")
    f = _tree_corrected(g, e, p, seed)
    ws.tree_route = "corrected"
    return f


# -- split step --------------------------------------------------------------

def _eliminate(g: Graph, f: frozenset, e: Edge, p: NormalizedRealization, ws: EliminationWorkspace):
    """Build X, its blocks and Y = [Y1 Y2]. Returns the non-tree rows in order."""
    x, y, z = p.x, p.y, p.z
    top = sorted(f)
    bottom = sorted(set(g.edges) - f)
    r = rigidity_matrix(g, p.base, top + bottom)
    keep = _kept_columns(g.n, {(x, 3), (y, 2), (y, 3), (z, 1), (z, 2), (z, 3)})
    xmat = r.submatrix(range(r.rows), [r.col_index(c) for c in keep[1] + keep[2] + keep[3]])
    ws.x = xmat
    if det_exact(xmat) == 0:
        raise _Degenerate("X is singular")

    t_idx = range(len(top))
    b_idx = range(len(top), len(top) + len(bottom))
    c1, c2, c3 = ([xmat.col_index(c) for c in keep[i]] for i in (1, 2, 3))
    ws.x11, ws.x12, ws.x13 = (xmat.submatrix(t_idx, c) for c in (c1, c2, c3))
    ws.x21, ws.x22, ws.x23 = (xmat.submatrix(b_idx, c) for c in (c1, c2, c3))
    try:
        x11_inv = invert_exact(ws.x11)
    except Singular:
        raise _Degenerate("tree block is singular") from None

    mult = ws.x21 @ x11_inv
    upper = xmat.submatrix(t_idx, range(xmat.cols))
    lower = xmat.submatrix(b_idx, range(xmat.cols)) - mult @ upper
    ws.x_eliminated = ExactMatrix(upper.tolist() + lower.tolist(), xmat.row_labels, xmat.col_labels)
    if not lower.submatrix(range(lower.rows), c1).is_zero():
        raise InternalAssertionFailed("block elimination left a nonzero lower-left block")
    y1 = ws.x22 - mult @ ws.x12
    y2 = ws.x23 - mult @ ws.x13
    ws.y = y1.hstack(y2)
    return bottom


def _split_ok(g: Graph, f: frozenset, e: Edge, r1: frozenset, r2: frozenset) -> bool:
    return (
        is_minimally_2_rigid_combinatorial(g.with_edges(sorted(f | r1)))
        and is_minimally_2_rigid_combinatorial(contract_vertices(g.with_edges(sorted(f | r2)), *e))
    )


def _split_proof(g, f, e, bottom, ws) -> Lemma1Split:
    n = g.n
    picked = laplace_split(ws.y, range(n - 2))
    r1 = frozenset(bottom[i] for i in picked)
    r2 = frozenset(bottom) - r1
    if (len(r1), len(r2)) != (n - 2, n - 3):
        raise InternalAssertionFailed(f"split sizes {len(r1)}, {len(r2)}")
    if not _split_ok(g, f, e, r1, r2):
        raise _ProofGap("derived graphs are not both minimally 2-rigid")
    return Lemma1Split(r1, r2)


def _split_corrected(g, f, e, p, bottom, ws, seed) -> Lemma1Split:
    n = g.n
    y1 = ws.y.submatrix(range(ws.y.rows), range(n - 2))
    tree = sorted(f - {e})
    rows, relabel = _contracted_rows(g, e, p, tree + bottom)
    zc, merged = relabel[p.z], relabel[e[0]]
    c1 = [(v, 1) for v in range(n - 1) if v != zc]
    c3 = [(v, 3) for v in range(n - 1) if v not in (zc, merged)]
    b = ExactMatrix([[row.get(c, 0) for c in c1 + c3] for row in rows], cols=len(c1) + len(c3))
    k = len(tree)
    t_idx, b_idx = range(k), range(k, b.rows)
    i1, i3 = range(len(c1)), range(len(c1), len(c1) + len(c3))
    try:
        b11_inv = invert_exact(b.submatrix(t_idx, i1))
    except Singular:
        raise _Degenerate("contracted tree block is singular") from None
    y2 = b.submatrix(b_idx, i3) - (b.submatrix(b_idx, i1) @ b11_inv) @ b.submatrix(t_idx, i3)
    for attempt in range(_SCALING_ATTEMPTS):
        rng = random.Random(f"split-scaling/{seed}/{attempt}")
        data = []
        for i in range(len(bottom)):
            t = rng.randint(1, DEFAULT_COORD_BOUND)
            data.append([t * v for v in y1.row(i)] + list(y2.row(i)))
        mat = ExactMatrix(data, cols=y1.cols + y2.cols)
        if det_exact(mat) != 0:
            r1 = frozenset(bottom[i] for i in laplace_split(mat, range(y1.cols)))
            r2 = frozenset(bottom) - r1
            if not _split_ok(g, f, e, r1, r2):
                raise InternalAssertionFailed("corrected split step failed its own check")
            return Lemma1Split(r1, r2)
    raise InternalAssertionFailed("no split of E - F found for this tree")


def _split_step(g, f, e, p, ws, seed, route) -> Lemma1Split:
    bottom = _eliminate(g, f, e, p, ws)
    if route in ("auto", "proof"):
        try:
            split = _split_proof(g, f, e, bottom, ws)
            ws.split_route = "proof"
            return split
        except _ProofGap as gap:
            if route == "proof":
                raise InternalAssertionFailed(f"split step: {gap}") from None
            ws.gaps.append(f"split: {gap}")
    split = _split_corrected(g, f, e, p, bottom, ws, seed)
    ws.split_route = "corrected"
    return split


# -- public API --------------------------------------------------------------

def _resampling(g: Graph, e: Edge, seed, coord_bound, ws, step):
    last = None
    for attempt in range(MAX_RESAMPLES):
        p = sample_normalized(g, e, seed=seed, coord_bound=coord_bound, attempt=attempt)
        ws.realization = p
        try:
            return step(p)
        except _Degenerate as exc:
            last = exc
    raise DegenerateSample(f"{MAX_RESAMPLES} samples failed ({last}); is the graph minimally 3-rigid?")


def _check_route(route: str) -> None:
    if route not in ROUTES:
        raise ValueError(f"route must be one of {ROUTES}")


def lemma2_spanning_tree(g: Graph, e: Edge, seed=0, coord_bound: int = DEFAULT_COORD_BOUND,
                         route: str = "auto", workspace: Optional[EliminationWorkspace] = None) -> frozenset:
    """Spanning tree F containing e such that (V, (E - F) + e)/e is minimally
    2-rigid."""
    _check_route(route)
    e = _edge_in(g, e)
    _require_minimally_rigid(g, seed)
    ws = workspace if workspace is not None else EliminationWorkspace()
    return _resampling(g, e, seed, coord_bound, ws, lambda p: _tree_step(g, e, p, ws, seed, route))


def lemma1_partition(g: Graph, f, e: Edge, seed=0, coord_bound: int = DEFAULT_COORD_BOUND,
                     route: str = "auto", workspace: Optional[EliminationWorkspace] = None) -> Lemma1Split:
    """Split E - F into R1 (|V|-2 edges) and R2 (|V|-3 edges) with (V, F + R1)
    and (V, F + R2)/e minimally 2-rigid."""
    _check_route(route)
    e = _edge_in(g, e)
    f = frozenset(norm_edge(*a) for a in f)
    if not f <= set(g.edges) or not is_spanning_tree(g.n, f):
        raise NotSpanningTree("F is not a spanning tree of g")
    if e not in f:
        raise NotSpanningTree("e must belong to F")
    _require_minimally_rigid(g, seed)
    ws = workspace if workspace is not None else EliminationWorkspace()
    return _resampling(g, e, seed, coord_bound, ws, lambda p: _split_step(g, f, e, p, ws, seed, route))


def partition_for_edge(g: Graph, e: Edge, seed=0, coord_bound: int = DEFAULT_COORD_BOUND,
                       route: str = "auto", workspace: Optional[EliminationWorkspace] = None) -> EdgePartition:
    """(S1, S2, S3) = (F, R1, R2); both steps share one sampled realization."""
    _check_route(route)
    e = _edge_in(g, e)
    _require_minimally_rigid(g, seed)
    ws = workspace if workspace is not None else EliminationWorkspace()

    def both(p):
        f = _tree_step(g, e, p, ws, seed, route)
        split = _split_step(g, f, e, p, ws, seed, route)
        return EdgePartition(f, split.r1, split.r2)

    part = _resampling(g, e, seed, coord_bound, ws, both)
    n = g.n
    s1, s2, s3 = part.parts
    if (len(s1 | s2), len(s1 | s3), len(s2 | s3 | {e})) != (2 * n - 3, 2 * n - 4, 2 * n - 4):
        raise InternalAssertionFailed("edge counts of the derived graphs are off")
    report = verify_partition(g, e, part)
    if not report.ok:
        raise InternalAssertionFailed(f"constructed partition fails verification: {report}")
    return part


@dataclass(frozen=True)
class PartitionReport:
    ok: bool
    sizes_ok: bool
    sizes: tuple
    membership_ok: bool
    # minimal 2-rigidity of (V, S1+S2), (V, S1+S3)/e, (V, S2+S3+e)/e
    rigid_ok: tuple

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "condition1": {"ok": self.sizes_ok, "sizes": list(self.sizes)},
            "condition2": {"ok": self.membership_ok},
            "condition3": {"ok": all(self.rigid_ok), "graphs": list(self.rigid_ok)},
        }


def derived_graphs(g: Graph, e: Edge, part: EdgePartition) -> tuple:
    """(V, S1+S2), (V, S1+S3)/e and (V, S2+S3+e)/e."""
    e = norm_edge(*e)
    s1, s2, s3 = part.parts
    return (
        g.with_edges(sorted(s1 | s2)),
        contract_vertices(g.with_edges(sorted(s1 | s3)), *e),
        contract_vertices(g.with_edges(sorted(s2 | s3 | {e})), *e),
    )


def verify_partition(g: Graph, e: Edge, part: EdgePartition) -> PartitionReport:
    """Check the three tripartition conditions combinatorially (no randomness)."""
    part.check_covers(g)
    e = norm_edge(*e)
    if e not in g.edges:
        raise NotAPartition(f"edge {e} not in graph")
    n = g.n
    sizes = part.sizes()
    sizes_ok = sizes == (n - 1, n - 2, n - 3)
    membership_ok = e in part.s1
    rigid_ok = tuple(is_minimally_2_rigid_combinatorial(h) for h in derived_graphs(g, e, part))
    return PartitionReport(sizes_ok and membership_ok and all(rigid_ok), sizes_ok, sizes, membership_ok, rigid_ok)
