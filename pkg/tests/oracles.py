"""Slow, obviously-correct reference implementations used as test oracles.

Nothing here imports the package's own algorithms beyond the Graph type.
"""
from fractions import Fraction
from itertools import combinations

import sympy


def induced_count(edges, verts) -> int:
    return sum(1 for u, v in edges if u in verts and v in verts)


def brute_sparse(n, edges, k, ell) -> bool:
    """Every vertex subset with at least k vertices spans <= k|V'| - l edges."""
    for size in range(max(k, 1), n + 1):
        for verts in combinations(range(n), size):
            if induced_count(edges, set(verts)) > k * size - ell:
                return False
    return True


def brute_status(n, edges, k, ell) -> str:
    if not brute_sparse(n, edges, k, ell):
        return "NOT-SPARSE"
    return "TIGHT" if len(edges) == k * n - ell else "SPARSE"


def brute_laman(n, edges) -> bool:
    """Minimally 2-rigid by Laman's count (single vertex included)."""
    if n == 1:
        return len(edges) == 0
    return len(edges) == 2 * n - 3 and brute_sparse(n, edges, 2, 3)


def contract(n, edges, e):
    keep, gone = min(e), max(e)

    def f(w):
        return keep if w == gone else (w - 1 if w > gone else w)

    out = []
    for u, v in edges:
        a, b = f(u), f(v)
        if a != b:
            out.append((min(a, b), max(a, b)))
    return n - 1, out


def brute_condition(n, e, s1, s2, s3) -> bool:
    if (len(s1), len(s2), len(s3)) != (n - 1, n - 2, n - 3) or e not in s1:
        return False
    if not brute_laman(n, list(s1 | s2)):
        return False
    if not brute_laman(*contract(n, list(s1 | s3), e)):
        return False
    return brute_laman(*contract(n, list(s2 | s3 | {e}), e))


def brute_partition_exists(n, edges, e):
    """Enumerate every size-feasible tripartition with e in S1."""
    rest = [a for a in sorted(edges) if a != e]
    for extra in combinations(rest, n - 2):
        s1 = frozenset(extra) | {e}
        left = [a for a in rest if a not in extra]
        for s2 in combinations(left, n - 2):
            s3 = frozenset(a for a in left if a not in s2)
            if brute_condition(n, e, s1, frozenset(s2), s3):
                return True
    return False


def sym(rows):
    return sympy.Matrix([[sympy.Rational(Fraction(x).numerator, Fraction(x).denominator) for x in r] for r in rows])


def sym_det(rows) -> int:
    return sym(rows).det(method="bareiss") if rows else 1


def brute_split_exists(rows, c) -> bool:
    n = len(rows)
    cc = [j for j in range(n) if j not in c]
    for r in combinations(range(n), len(c)):
        rc = [i for i in range(n) if i not in r]
        if sym_det([[rows[i][j] for j in c] for i in r]) != 0 and sym_det(
                [[rows[i][j] for j in cc] for i in rc]) != 0:
            return True
    return False


def rigidity_rows(n, edges, coords):
    """Rigidity matrix rows, columns ordered (coordinate, vertex)."""
    d = len(coords[0])
    out = []
    for v, w in edges:
        row = [0] * (d * n)
        for i in range(d):
            row[i * n + v] = coords[v][i] - coords[w][i]
            row[i * n + w] = coords[w][i] - coords[v][i]
        out.append(row)
    return out
