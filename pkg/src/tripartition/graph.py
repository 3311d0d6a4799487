"""Graphs on vertices ``0..n-1`` with edge multisets, plus the structural
operations used throughout the package (contraction, coning, 0-extension),
named fixtures and the ``.grf`` edge-list format.

Vertex order is numeric order on ids. Edges are stored as ``(u, v)`` tuples
with ``u < v``; repeated tuples are parallel edges.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence, Tuple

from .errors import BadNeighbors, EdgeNotPresent, NotAPartition, ParseError

Edge = Tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: Tuple[Edge, ...]
    labels: Optional[Tuple[str, ...]] = None
    # old vertex id -> new vertex id, set by contraction
    relabel: Optional[Tuple[int, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        edges = tuple(norm_edge(int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if u < 0 or v >= self.n:
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
        object.__setattr__(self, "edges", edges)
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels must name every vertex")

    @property
    def m(self) -> int:
        return len(self.edges)

    def is_simple(self) -> bool:
        return len(set(self.edges)) == len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    def degree(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def neighbors(self, v: int) -> list:
        out = set()
        for a, b in self.edges:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return sorted(out)

    def multiplicities(self) -> Counter:
        return Counter(self.edges)

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def with_edges(self, edges: Iterable[Edge]) -> "Graph":
        """Same vertex set (and labels), different edges."""
        return Graph(self.n, tuple(edges), self.labels)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def edge_name(self, e: Edge) -> str:
        return f"{self.label(e[0])}{self.label(e[1])}" if self.labels else f"{e[0]}-{e[1]}"


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(combinations(range(n), 2)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def contract_vertices(g: Graph, u: int, v: int) -> Graph:
    """Merge ``u`` and ``v`` into the smaller id and shift higher ids down.

    Every edge between ``u`` and ``v`` becomes a loop and is dropped; parallel
    edges created by the merge are kept.
    """
    keep, gone = min(u, v), max(u, v)
    if keep == gone:
        raise ValueError("cannot merge a vertex with itself")
    relabel = tuple(keep if w == gone else (w - 1 if w > gone else w) for w in range(g.n))
    edges = []
    for a, b in g.edges:
        a2, b2 = relabel[a], relabel[b]
        if a2 != b2:
            edges.append(norm_edge(a2, b2))
    labels = None
    if g.labels:
        labels = tuple(
            (g.labels[keep] + g.labels[gone]) if w == keep else g.labels[w]
            for w in range(g.n)
            if w != gone
        )
    return Graph(g.n - 1, tuple(edges), labels, relabel)


def contract_edge(g: Graph, e: Edge) -> Graph:
    """``g / e``: contract one edge, dropping loops and keeping parallel edges."""
    e = norm_edge(*e)
    if e not in g.edges:
        raise EdgeNotPresent(f"edge {e} not in graph")
    return contract_vertices(g, *e)


def cone(g: Graph) -> Graph:
    """Add vertex ``n`` adjacent to every existing vertex."""
    labels = g.labels + ("cone",) if g.labels else None
    return Graph(g.n + 1, g.edges + tuple((v, g.n) for v in range(g.n)), labels)


BANANA_LABELS = ("r1", "r2", "a1", "b1", "c1", "a2", "b2", "c2")


def double_banana() -> Graph:
    """Two copies of K5 minus an edge glued along the missing pair r1, r2."""
    idx = {name: i for i, name in enumerate(BANANA_LABELS)}
    edges = []
    for hub in ("r1", "r2"):
        for leaf in ("a1", "b1", "c1", "a2", "b2", "c2"):
            edges.append((idx[hub], idx[leaf]))
    for side in ("1", "2"):
        a, b, c = (idx[ch + side] for ch in "abc")
        edges += [(a, b), (a, c), (b, c)]
    return Graph(8, tuple(edges), BANANA_LABELS)


def banana_edges(names: str) -> frozenset:
    """Parse ``"r1a1 r1b1 ..."`` into a set of edges on the banana ids."""
    idx = {name: i for i, name in enumerate(BANANA_LABELS)}
    out = set()
    for token in names.split():
        out.add(norm_edge(idx[token[:2]], idx[token[2:]]))
    return frozenset(out)


@dataclass(frozen=True)
class EdgePartition:
    s1: frozenset
    s2: frozenset
    s3: frozenset

    def __post_init__(self):
        for name in ("s1", "s2", "s3"):
            object.__setattr__(
                self, name, frozenset(norm_edge(*e) for e in getattr(self, name))
            )

    @property
    def parts(self):
        return (self.s1, self.s2, self.s3)

    def sizes(self) -> tuple:
        return tuple(len(s) for s in self.parts)

    def check_covers(self, g: Graph) -> None:
        """Raise NotAPartition unless the parts split ``g``'s (simple) edge set."""
        if not g.is_simple():
            raise NotAPartition("edge partitions are only defined for simple graphs")
        s1, s2, s3 = self.parts
        if s1 & s2 or s1 & s3 or s2 & s3:
            raise NotAPartition("parts overlap")
        union = s1 | s2 | s3
        edges = set(g.edges)
        if union - edges:
            raise NotAPartition(f"edges not in graph: {sorted(union - edges)}")
        if edges - union:
            raise NotAPartition(f"edges not covered: {sorted(edges - union)}")

    def swapped(self, i: int, j: int) -> "EdgePartition":
        parts = list(self.parts)
        parts[i], parts[j] = parts[j], parts[i]
        return EdgePartition(*parts)

    def to_json(self, edge: Edge, seed=None) -> dict:
        out = {"edge": list(norm_edge(*edge))}
        for name, part in zip(("s1", "s2", "s3"), self.parts):
            out[name] = [list(e) for e in sorted(part)]
        out["seed"] = seed
        return out

    @classmethod
    def from_json(cls, data: dict) -> Tuple[Edge, "EdgePartition"]:
        edge = norm_edge(*data["edge"])
        parts = [frozenset(norm_edge(*e) for e in data[name]) for name in ("s1", "s2", "s3")]
        return edge, cls(*parts)


def banana_fixture_partitions() -> list:
    """The two hand-drawn tripartitions of the double banana.

    Returns ``[(e, partition), ...]`` for e = r1b1 (fixture A) and
    e = a1b1 (fixture B).
    """
    fixture_a = EdgePartition(
        banana_edges("r1a1 r1b1 r1c1 r1a2 r1c2 r2b1 r2b2"),
        banana_edges("r1b2 r2a1 a1b1 b1c1 a2b2 a2c2"),
        banana_edges("r2c1 r2a2 r2c2 a1c1 b2c2"),
    )
    fixture_b = EdgePartition(
        banana_edges("r1b1 r1a2 r2b1 r2b2 a1b1 b1c1 a2c2"),
        banana_edges("r1a1 r1b2 r1c2 r2a1 a1c1 a2b2"),
        banana_edges("r1c1 r2c1 r2a2 r2c2 b2c2"),
    )
    (ea,) = banana_edges("r1b1")
    (eb,) = banana_edges("a1b1")
    return [(ea, fixture_a), (eb, fixture_b)]


def henneberg_0_extend(g: Graph, neighbors: Optional[Sequence[int]] = None, rng_seed=None) -> Graph:
    """Add vertex ``n`` joined to three distinct existing vertices.

    With ``neighbors=None`` the three are drawn from ``random.Random(rng_seed)``.
    """
    if not g.is_simple():
        raise BadNeighbors("0-extension expects a simple graph")
    if neighbors is None:
        if g.n < 3:
            raise BadNeighbors("need at least 3 vertices")
        neighbors = random.Random(rng_seed).sample(range(g.n), 3)
    neighbors = [int(v) for v in neighbors]
    if len(neighbors) != 3 or len(set(neighbors)) != 3:
        raise BadNeighbors(f"need 3 distinct neighbours, got {neighbors}")
    if any(v < 0 or v >= g.n for v in neighbors):
        raise BadNeighbors(f"neighbours {neighbors} out of range for n={g.n}")
    new = g.n
    return Graph(g.n + 1, g.edges + tuple((v, new) for v in sorted(neighbors)))


def henneberg_chain(n: int, seed) -> Graph:
    """K4 followed by ``n - 4`` random 0-extensions; deterministic in ``seed``."""
    if n < 4:
        raise ValueError("chain starts at K4")
    rng = random.Random(f"henneberg/{seed}")
    g = complete_graph(4)
    while g.n < n:
        g = henneberg_0_extend(g, rng.sample(range(g.n), 3))
    return g


def is_connected(n: int, edges: Iterable[Edge]) -> bool:
    if n == 0:
        return True
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def is_spanning_tree(n: int, edges: Iterable[Edge]) -> bool:
    edges = list(edges)
    return len(edges) == n - 1 and is_connected(n, edges)


def parse_graph(text: str) -> Graph:
    """Read the ``.grf`` edge-list format.

    First non-comment line is the vertex count, then one ``u v`` pair per
    line. ``#`` starts a comment. Repeated pairs are parallel edges.
    """
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 1:
                raise ParseError(f"expected vertex count, got {line!r}", lineno)
            try:
                n = int(fields[0])
            except ValueError:
                raise ParseError(f"bad vertex count {fields[0]!r}", lineno) from None
            if n < 0:
                raise ParseError("negative vertex count", lineno)
            continue
        if len(fields) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"bad vertex id in {line!r}", lineno) from None
        if u == v:
            raise ParseError(f"loop at vertex {u}", lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"vertex id out of range 0..{n - 1}", lineno)
        edges.append(norm_edge(u, v))
    if n is None:
        raise ParseError("missing vertex count")
    return Graph(n, tuple(edges))


def serialize_graph(g: Graph) -> str:
    lines = [str(g.n)] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def canonical(g: Graph) -> Graph:
    return Graph(g.n, tuple(g.sorted_edges()), g.labels)
