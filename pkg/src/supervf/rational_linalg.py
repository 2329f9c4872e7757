"""Exact dense/sparse linear algebra over the rationals.

All routines work on lists of lists of ``Fraction``; dimensions stay small
(a couple hundred at most), so clarity wins over asymptotics.  Inner loops
skip zero entries, which keeps costs near the sparse budget that adjoint
matrices of monomial bases actually have.  Sparse matrices are dicts mapping
row index to a dict of column index to nonzero Fraction.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import InputError

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def parse_rational(text) -> Fraction:
    """Parse "p/q" or integer strings; floats are rejected on purpose."""
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise InputError(
            f"expected a rational string like '3' or '-2/7', got {text!r}"
        )
    return Fraction(text.strip())


def format_rational(q: Fraction) -> str:
    q = frac(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def zero_vector(n):
    return [ZERO] * n


def unit_vector(n, i):
    v = [ZERO] * n
    v[i] = ONE
    return v


def identity_matrix(n):
    return [unit_vector(n, i) for i in range(n)]


def mat_vec(rows, v):
    out = []
    for row in rows:
        acc = ZERO
        for a, x in zip(row, v):
            if a and x:
                acc += a * x
        out.append(acc)
    return out


def mat_mul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = [[ZERO] * m for _ in range(n)]
    for i in range(n):
        row = a[i]
        acc = out[i]
        for t in range(k):
            x = row[t]
            if not x:
                continue
            brow = b[t]
            for j in range(m):
                y = brow[j]
                if y:
                    acc[j] += x * y
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    c = frac(c)
    return [[c * x for x in row] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_eq(a, b):
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


def is_zero_matrix(a):
    return all(not x for row in a for x in row)


def rref(rows):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    work = [list(map(frac, r)) for r in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots = []
    rank_ = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(rank_, len(work)):
            if work[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        work[rank_], work[pivot_row] = work[pivot_row], work[rank_]
        pv = work[rank_][col]
        if pv != ONE:
            work[rank_] = [x / pv for x in work[rank_]]
        prow = work[rank_]
        for r in range(len(work)):
            if r != rank_ and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], prow)]
        pivots.append(col)
        rank_ += 1
    return work[:rank_], pivots


def rank(rows):
    return len(rref(rows)[0])


def inverse(a):
    """Exact inverse, or None when the matrix is singular."""
    n = len(a)
    aug = [list(map(frac, row)) + unit_vector(n, i) for i, row in enumerate(a)]
    reduced, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(reduced) != n:
        return None
    return [row[n:] for row in reduced]


def solve(a, b):
    """One exact solution of a x = b (free variables set to 0), or None."""
    n = len(a)
    m = len(a[0]) if a else 0
    aug = [list(map(frac, row)) + [frac(bi)] for row, bi in zip(a, b)]
    reduced, pivots = rref(aug)
    x = [ZERO] * m
    for row, p in zip(reduced, pivots):
        if p == m:  # pivot in the constant column: inconsistent system
            return None
        x[p] = row[m]
    return x


def nullspace(a):
    """Canonical kernel basis (free variable set to 1, RREF back-fill)."""
    if not a:
        return []
    m = len(a[0])
    reduced, pivots = rref(a)
    pivot_set = set(pivots)
    basis = []
    for j in range(m):
        if j in pivot_set:
            continue
        v = [ZERO] * m
        v[j] = ONE
        for row, p in zip(reduced, pivots):
            if row[j]:
                v[p] = -row[j]
        basis.append(v)
    return basis


# -- sparse helpers (dict of rows) -------------------------------------------

def sparse_from_dense(rows):
    out = {}
    for i, row in enumerate(rows):
        entries = {j: x for j, x in enumerate(row) if x}
        if entries:
            out[i] = entries
    return out


def sparse_to_dense(sp, n, m):
    rows = [[ZERO] * m for _ in range(n)]
    for i, entries in sp.items():
        for j, x in entries.items():
            rows[i][j] = x
    return rows


def sparse_mul(a, b):
    out = {}
    for i, arow in a.items():
        acc = {}
        for k, x in arow.items():
            brow = b.get(k)
            if not brow:
                continue
            for j, y in brow.items():
                v = acc.get(j, ZERO) + x * y
                if v:
                    acc[j] = v
                elif j in acc:
                    del acc[j]
        if acc:
            out[i] = acc
    return out


def sparse_is_nilpotent(sp, n):
    """True iff the n x n sparse matrix is nilpotent (repeated squaring)."""
    m = sp
    e = 1
    while True:
        if not m:
            return True
        if e >= n:
            return False
        m = sparse_mul(m, m)
        e *= 2


class SpanBuilder:
    """Incremental exact span with pivot-normalized rows."""

    __slots__ = ("n", "rows")

    def __init__(self, n):
        self.n = n
        self.rows = {}  # pivot column -> row with 1 at the pivot

    def residual(self, vec):
        v = list(vec)
        for p in sorted(self.rows):
            c = v[p]
            if c:
                row = self.rows[p]
                for j in range(p, self.n):
                    if row[j]:
                        v[j] -= c * row[j]
        return v

    def contains(self, vec):
        return not any(self.residual(vec))

    def add(self, vec):
        """Insert a vector; returns True when it enlarged the span."""
        r = self.residual(vec)
        for p in range(self.n):
            if r[p]:
                pv = r[p]
                if pv != ONE:
                    r = [x / pv for x in r]
                self.rows[p] = r
                return True
        return False

    @property
    def dim(self):
        return len(self.rows)

    def reduced_rows(self):
        """Fully reduced (RREF) rows, sorted by pivot column."""
        pivots = sorted(self.rows)
        rows = {p: list(self.rows[p]) for p in pivots}
        for p in reversed(pivots):
            prow = rows[p]
            for q in pivots:
                if q < p and rows[q][p]:
                    f = rows[q][p]
                    rows[q] = [x - f * y for x, y in zip(rows[q], prow)]
        return [tuple(rows[p]) for p in pivots]
