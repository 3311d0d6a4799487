"""Rigidity matrices and randomized rigidity tests with exact certificates.

Generic realizations are stood in for by uniform random integer coordinates.
A full-rank evaluation is an exact proof of rigidity (rank can only drop
under specialization), so only a "flexible" verdict carries an error bound.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional, Tuple

from .errors import DegenerateSample, MissingCoordinates
from .graph import Edge, Graph, norm_edge
from .linalg import ExactMatrix, rank_exact

DEFAULT_COORD_BOUND = 1 << 20
DEFAULT_TRIALS = 3
MAX_RESAMPLES = 16


def _rng(kind: str, *parts) -> random.Random:
    return random.Random("/".join([kind, *map(str, parts)]))


@dataclass(frozen=True)
class Realization:
    d: int
    coords: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        coords = tuple(tuple(Fraction(c) for c in pt) for pt in self.coords)
        if any(len(pt) != self.d for pt in coords):
            raise ValueError(f"every point needs {self.d} coordinates")
        object.__setattr__(self, "coords", coords)

    def __getitem__(self, v: int):
        return self.coords[v]

    def translated(self, shift) -> "Realization":
        return Realization(self.d, tuple(tuple(a + Fraction(b) for a, b in zip(pt, shift)) for pt in self.coords))


@dataclass(frozen=True)
class NormalizedRealization:
    """p(z) = 0 and p(x) - p(y) = (lam, 0, 0) with lam != 0."""

    base: Realization
    x: int
    y: int
    z: int
    lam: Fraction

    def __post_init__(self):
        p = self.base
        if p.d != 3:
            raise ValueError("normalized realizations are 3-dimensional")
        if self.z in (self.x, self.y) or self.x == self.y:
            raise ValueError("x, y, z must be distinct")
        if self.lam == 0 or any(c != 0 for c in p[self.z]):
            raise ValueError("not normalized")
        diff = tuple(a - b for a, b in zip(p[self.x], p[self.y]))
        if diff != (self.lam, 0, 0):
            raise ValueError("p(x) - p(y) must be (lam, 0, 0)")


def column_labels(n: int, d: int) -> list:
    """``(v, i)`` pairs, 1-based coordinate, ordered by coordinate then vertex."""
    return [(v, i) for i in range(1, d + 1) for v in range(n)]


def rigidity_matrix(g: Graph, p: Realization, row_order=None) -> ExactMatrix:
    """|E| x d|V| matrix; the row of edge vw holds p(v) - p(w) in v's columns
    and p(w) - p(v) in w's columns.

    Rows follow ``row_order`` (a sequence of the graph's edges) when given,
    otherwise the graph's own edge order.
    """
    if len(p.coords) < g.n:
        raise MissingCoordinates(f"realization covers {len(p.coords)} of {g.n} vertices")
    if not g.is_simple():
        raise ValueError("rigidity matrices are built for simple graphs")
    d, n = p.d, g.n
    edges = list(g.edges) if row_order is None else [norm_edge(*e) for e in row_order]
    if sorted(edges) != g.sorted_edges():
        raise ValueError("row order must list every edge exactly once")
    data = []
    for v, w in edges:
        row = [Fraction(0)] * (d * n)
        for i in range(d):
            diff = p[v][i] - p[w][i]
            row[i * n + v] = diff
            row[i * n + w] = -diff
        data.append(row)
    return ExactMatrix(data, edges, column_labels(n, d), cols=d * n)


def sample_generic(g: Graph, d: int, seed=0, coord_bound: int = DEFAULT_COORD_BOUND, trial: int = 0) -> Realization:
    """Independent uniform integers in ``[-coord_bound, coord_bound]``."""
    rng = _rng("generic", seed, trial)
    pts = tuple(tuple(rng.randint(-coord_bound, coord_bound) for _ in range(d)) for _ in range(g.n))
    return Realization(d, pts)


def default_z(e: Edge, n: int) -> int:
    return next(v for v in range(n) if v not in e)


def sample_normalized(
    g: Graph,
    e: Edge,
    z: Optional[int] = None,
    seed=0,
    coord_bound: int = DEFAULT_COORD_BOUND,
    attempt: int = 0,
    require_full_rank: bool = False,
) -> NormalizedRealization:
    """Random 3D realization with p(z) = 0 and p(x) - p(y) on the first axis.

    ``e = (x, y)`` in the order given. With ``require_full_rank`` the sample is
    redrawn (up to 16 attempts, starting at ``attempt``) until the rigidity
    matrix reaches rank 3|V| - 6; DegenerateSample otherwise.
    """
    x, y = e
    if z is None:
        z = default_z(e, g.n)
    if len({x, y, z}) != 3 or not all(0 <= v < g.n for v in (x, y, z)):
        raise ValueError("x, y, z must be distinct vertices")
    for a in range(attempt, attempt + (MAX_RESAMPLES if require_full_rank else 1)):
        rng = _rng("normalized", seed, a)
        lam = 0
        while lam == 0:
            lam = rng.randint(-coord_bound, coord_bound)
        pts = []
        for v in range(g.n):
            pts.append(tuple(rng.randint(-coord_bound, coord_bound) for _ in range(3)))
        pts[z] = (0, 0, 0)
        py = pts[y]
        pts[x] = (py[0] + lam, py[1], py[2])
        nr = NormalizedRealization(Realization(3, tuple(pts)), x, y, z, Fraction(lam))
        if not require_full_rank:
            return nr
        if rank_exact(rigidity_matrix(g, nr.base)) == 3 * g.n - 6:
            return nr
    raise DegenerateSample(f"no full-rank normalized sample after {MAX_RESAMPLES} attempts")


def rigid_rank_target(n: int, d: int) -> int:
    """Rank of an infinitesimally rigid framework on n vertices in R^d."""
    if n <= d:
        return comb(n, 2)
    return d * n - comb(d + 1, 2)


@dataclass(frozen=True)
class RigidityVerdict:
    rigid: bool
    rank: int
    target: int
    d: int
    seed: object
    trials: int
    # realization that certifies rigidity (None for flexible verdicts)
    certificate: Optional[Realization] = None
    # upper bound on P(flexible verdict although the graph is rigid)
    failure_bound: float = 0.0
    minimal: Optional[bool] = None
    reason: str = ""

    def __bool__(self):
        return self.rigid

    @property
    def label(self) -> str:
        return "RIGID" if self.rigid else "PROBABLY-FLEXIBLE"

    def summary(self) -> str:
        text = f"{self.label} rank={self.rank}/{self.target}"
        if self.minimal is not None:
            text += " minimal" if self.minimal else " not-minimal"
        return text


def is_rigid(g: Graph, d: int, seed=0, trials: int = DEFAULT_TRIALS,
             coord_bound: int = DEFAULT_COORD_BOUND) -> RigidityVerdict:
    """Exact-rank test at ``trials`` random integer realizations.

    Graphs with at most ``d`` vertices are treated as the complete-graph case:
    rigid iff complete with affinely independent points.
    """
    n = g.n
    target = rigid_rank_target(n, d)
    simple = Graph(n, tuple(sorted(set(g.edges))))
    if n <= d and simple.m != comb(n, 2):
        return RigidityVerdict(False, 0, target, d, seed, 0, reason="fewer than d+1 vertices and not complete")
    if n <= 1:
        return RigidityVerdict(True, 0, 0, d, seed, 0, Realization(d, ((0,) * d,) * n))
    best = -1
    for t in range(trials):
        p = sample_generic(simple, d, seed, coord_bound, trial=t)
        r = rank_exact(rigidity_matrix(simple, p))
        best = max(best, r)
        if r == target:
            return RigidityVerdict(True, r, target, d, seed, t + 1, p)
    per_trial = min(1.0, target / (2 * coord_bound + 1))
    return RigidityVerdict(False, best, target, d, seed, trials, failure_bound=per_trial ** trials)


def is_minimally_rigid(g: Graph, d: int, seed=0, trials: int = DEFAULT_TRIALS,
                       coord_bound: int = DEFAULT_COORD_BOUND) -> RigidityVerdict:
    """Rigid with exactly as many edges as the rank target (so every row of the
    rigidity matrix is needed)."""
    v = is_rigid(g, d, seed, trials, coord_bound)
    minimal = v.rigid and g.is_simple() and g.m == v.target
    return RigidityVerdict(v.rigid, v.rank, v.target, d, seed, v.trials, v.certificate,
                           v.failure_bound, minimal, v.reason)
