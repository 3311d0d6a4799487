"""Dense exact linear algebra over the rationals.

Entries are :class:`fractions.Fraction`. Rank and determinant go through
fraction-free (Bareiss) elimination on integer rows; the pivot in each column
is the first nonzero entry at or below the current row.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, Optional, Sequence

from .errors import BadPrime, InternalAssertionFailed, Singular

# Mersenne prime 2^61 - 1; the default modulus for fast pre-checks.
DEFAULT_PRIME = (1 << 61) - 1
_SPLIT_PRIMES = (DEFAULT_PRIME, 2305843009213693921, 4611686018427387847, 9223372036854775783)


class ExactMatrix:
    """Immutable dense matrix of Fractions with optional row/column labels."""

    __slots__ = ("rows", "cols", "_data", "row_labels", "col_labels")

    def __init__(self, data, row_labels=None, col_labels=None, cols=None):
        data = tuple(tuple(Fraction(x) for x in row) for row in data)
        self.rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        self.cols = cols
        if any(len(r) != cols for r in data):
            raise ValueError("ragged matrix")
        self._data = data
        if row_labels is not None:
            row_labels = tuple(row_labels)
            if len(row_labels) != self.rows or len(set(row_labels)) != self.rows:
                raise ValueError("row labels must be unique and match the row count")
        if col_labels is not None:
            col_labels = tuple(col_labels)
            if len(col_labels) != self.cols or len(set(col_labels)) != self.cols:
                raise ValueError("column labels must be unique and match the column count")
        self.row_labels = row_labels
        self.col_labels = col_labels

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def tolist(self) -> list:
        return [list(r) for r in self._data]

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.shape, self._data))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._data)
        return f"ExactMatrix({self.rows}x{self.cols}: [{body}])"

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "ExactMatrix":
        rows, cols = list(rows), list(cols)
        rl = [self.row_labels[i] for i in rows] if self.row_labels else None
        cl = [self.col_labels[j] for j in cols] if self.col_labels else None
        return ExactMatrix([[self._data[i][j] for j in cols] for i in rows], rl, cl, cols=len(cols))

    def row_index(self, label) -> int:
        return self.row_labels.index(label)

    def col_index(self, label) -> int:
        return self.col_labels.index(label)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            [[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.col_labels, self.row_labels, cols=self.rows,
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = list(zip(*other._data)) if other.rows else [()] * other.cols
        data = [[sum(a * b for a, b in zip(r, c)) for c in ocols] for r in self._data]
        return ExactMatrix(data, self.row_labels, other.col_labels, cols=other.cols)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        data = [[a - b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)]
        return ExactMatrix(data, self.row_labels, self.col_labels, cols=self.cols)

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        cl = None
        if self.col_labels is not None and other.col_labels is not None:
            cl = self.col_labels + other.col_labels
        data = [r + s for r, s in zip(self._data, other._data)]
        return ExactMatrix(data, self.row_labels, cl, cols=self.cols + other.cols)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def integer_rows(self) -> list:
        """Each row scaled by the lcm of its denominators (row-wise, so ranks and
        the vanishing of any minor are unchanged)."""
        out = []
        for r in self._data:
            d = lcm(*(x.denominator for x in r)) if r else 1
            out.append([int(x * d) for x in r])
        return out


def _bareiss(a: list, want_det: bool = False):
    """In-place fraction-free elimination on integer rows.

    Returns ``(rank, det)``; ``det`` is only meaningful for square input with
    ``want_det``.
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    prev = 1
    sign = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            if want_det:
                return r, 0
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            sign = -sign
        p = a[r][c]
        pr = a[r]
        for i in range(r + 1, nrows):
            ri = a[i]
            f = ri[c]
            for j in range(c + 1, ncols):
                ri[j] = (p * ri[j] - f * pr[j]) // prev
            ri[c] = 0
        prev = p
        r += 1
    det = sign * prev if (want_det and r == nrows == ncols) else 0
    if want_det and nrows == 0:
        det = 1
    return r, det


def rank_exact(m: ExactMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return _bareiss(m.integer_rows())[0]


def det_exact(m: ExactMatrix) -> Fraction:
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    if m.rows == 0:
        return Fraction(1)
    scale = 1
    rows = []
    for r in m._data:
        d = lcm(*(x.denominator for x in r))
        scale *= d
        rows.append([int(x * d) for x in r])
    return Fraction(_bareiss(rows, want_det=True)[1], scale)


def _int_det(rows: list) -> int:
    if not rows:
        return 1
    return _bareiss([list(r) for r in rows], want_det=True)[1]


def invert_exact(m: ExactMatrix) -> ExactMatrix:
    """Gauss-Jordan inverse. Raises Singular when ``det(m) == 0``."""
    n = m.rows
    if n != m.cols:
        raise ValueError("inverse of a non-square matrix")
    a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m._data)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise Singular("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv_p = 1 / a[c][c]
        a[c] = [x * inv_p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return ExactMatrix([r[n:] for r in a], m.col_labels, m.row_labels, cols=n)


def _check_prime(prime: int) -> None:
    if prime < 2 or prime >= 1 << 64:
        raise BadPrime(f"modulus {prime} does not fit a machine word")


def _reduce_rows(m: ExactMatrix, prime: int) -> list:
    out = []
    for r in m._data:
        row = []
        for x in r:
            if x.denominator % prime == 0:
                raise BadPrime(f"denominator {x.denominator} divisible by {prime}")
            row.append(x.numerator * pow(x.denominator, -1, prime) % prime)
        out.append(row)
    return out


def _rank_mod_rows(a: list, p: int) -> int:
    a = [list(r) for r in a]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        pr = a[r]
        for i in range(r + 1, nrows):
            f = a[i][c] * inv % p
            if f:
                ri = a[i]
                for j in range(c, ncols):
                    ri[j] = (ri[j] - f * pr[j]) % p
        r += 1
    return r


def _det_mod_rows(a: list, p: int) -> int:
    n = len(a)
    a = [list(r) for r in a]
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c] % p
        inv = pow(a[c][c], -1, p)
        for i in range(c + 1, n):
            f = a[i][c] * inv % p
            if f:
                for j in range(c, n):
                    a[i][j] = (a[i][j] - f * a[c][j]) % p
    return det % p


def _inverse_mod_rows(a: list, p: int) -> Optional[list]:
    n = len(a)
    aug = [[x % p for x in r] + [int(i == j) for j in range(n)] for i, r in enumerate(a)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c]), None)
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], -1, p)
        aug[c] = [x * inv % p for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[c])]
    return [r[n:] for r in aug]


def rank_modular(m: ExactMatrix, prime: int = DEFAULT_PRIME) -> int:
    """Rank of ``m`` reduced modulo ``prime``. Never exceeds the exact rank."""
    _check_prime(prime)
    if m.rows == 0 or m.cols == 0:
        return 0
    return _rank_mod_rows(_reduce_rows(m, prime), prime)


def _minors_ok(rows: list, r_set: Sequence[int], c_set: Sequence[int]) -> bool:
    n = len(rows)
    r_comp = [i for i in range(n) if i not in set(r_set)]
    c_comp = [j for j in range(n) if j not in set(c_set)]
    first = [[rows[i][j] for j in c_set] for i in r_set]
    second = [[rows[i][j] for j in c_comp] for i in r_comp]
    return _int_det(first) != 0 and _int_det(second) != 0


def _greedy_basis(rows: list, candidates: Sequence[int], cols: Sequence[int], k: int, p: int) -> list:
    chosen = []
    for i in candidates:
        trial = chosen + [i]
        if _rank_mod_rows([[rows[r][c] % p for c in cols] for r in trial], p) == len(trial):
            chosen = trial
            if len(chosen) == k:
                break
    return chosen


def _exchange(rows, c_set, c_comp, start, p):
    """Single-row swaps that keep the first minor nonzero and raise the rank of
    the complementary block. Returns the row set reached."""
    n = len(rows)
    k = len(c_set)
    r_set = list(start)

    def second_rank(rs):
        comp = [i for i in range(n) if i not in rs]
        return _rank_mod_rows([[rows[i][j] % p for j in c_comp] for i in comp], p)

    current = second_rank(r_set)
    improved = True
    while current < n - k and improved:
        improved = False
        comp = [i for i in range(n) if i not in r_set]
        for out in list(r_set):
            for into in comp:
                trial = sorted(set(r_set) - {out} | {into})
                sub = [[rows[i][j] % p for j in c_set] for i in trial]
                if _det_mod_rows(sub, p) == 0:
                    continue
                rank = second_rank(trial)
                if rank > current:
                    r_set, current, improved = trial, rank, True
                    break
            if improved:
                break
    return r_set


def _algebraic_split(rows, c_set, p, rng):
    """Cauchy-Binet elimination.

    With W the inverse of X, det X[R^c, C^c] vanishes exactly when
    det W[C, R] does, so R must be a common column basis of X[:, C]^T and
    W[C, :]. The polynomial det(sum_r t_r a_r b_r^T) has one monomial per
    common basis; rows are dropped in ascending order while it stays nonzero
    at a random point, which leaves a single common basis.
    """
    n = len(rows)
    k = len(c_set)
    w = _inverse_mod_rows(rows, p)
    if w is None:
        return None
    a = [[rows[r][c] % p for c in c_set] for r in range(n)]
    b = [[w[c][r] for c in c_set] for r in range(n)]
    t = [rng.randrange(1, p) for _ in range(n)]

    def outer(r):
        return [[t[r] * x % p * y % p for y in b[r]] for x in a[r]]

    m = [[0] * k for _ in range(k)]
    for r in range(n):
        o = outer(r)
        for i in range(k):
            for j in range(k):
                m[i][j] = (m[i][j] + o[i][j]) % p
    if _det_mod_rows(m, p) == 0:
        return None
    keep = set(range(n))
    for r in range(n):
        if len(keep) == k:
            break
        o = outer(r)
        trial = [[(m[i][j] - o[i][j]) % p for j in range(k)] for i in range(k)]
        if _det_mod_rows(trial, p) != 0:
            keep.discard(r)
            m = trial
    if len(keep) != k:
        return None
    return sorted(keep)


def laplace_split(x: ExactMatrix, c: Iterable[int]) -> tuple:
    """Row set ``R`` with ``|R| = |c|`` such that ``x[R, c]`` and the
    complementary block ``x[R^c, c^c]`` are both invertible.

    Search order, first success wins:

    1. ``R0``: the first ``|c|`` rows (ascending) independent in ``x[:, c]``.
    2. Single-row swaps out of ``R0`` (ascending ``out``, then ``into``) that
       keep ``x[R, c]`` invertible and raise the rank of the complementary
       block.
    3. Cauchy-Binet elimination modulo a 61-bit prime with a fixed-seed point
       (see ``_algebraic_split``), retried over four primes.
    4. Exhaustive search over ``R`` in lexicographic order when ``n <= 12``.

    Every candidate is confirmed with exact integer determinants before it is
    returned, so the modular steps only guide the search.
    """
    n = x.rows
    if n != x.cols:
        raise ValueError("laplace_split needs a square matrix")
    c_set = sorted(set(c))
    if any(j < 0 or j >= n for j in c_set):
        raise ValueError("column index out of range")
    k = len(c_set)
    rows = x.integer_rows()
    if _int_det(rows) == 0:
        raise Singular("laplace_split needs an invertible matrix")
    if k == 0:
        return ()
    if k == n:
        return tuple(range(n))
    c_comp = [j for j in range(n) if j not in set(c_set)]

    p = DEFAULT_PRIME
    start = _greedy_basis(rows, range(n), c_set, k, p)
    if len(start) == k:
        if _minors_ok(rows, start, c_set):
            return tuple(start)
        swapped = _exchange(rows, c_set, c_comp, start, p)
        if _minors_ok(rows, swapped, c_set):
            return tuple(swapped)

    for attempt, prime in enumerate(_SPLIT_PRIMES):
        rng = random.Random(f"laplace_split/{attempt}")
        found = _algebraic_split(rows, c_set, prime, rng)
        if found is not None and _minors_ok(rows, found, c_set):
            return tuple(found)

    if n <= 12:
        for r_set in combinations(range(n), k):
            if _minors_ok(rows, r_set, c_set):
                return r_set
    raise InternalAssertionFailed("no Laplace split found for an invertible matrix")

