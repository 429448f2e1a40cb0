"""Exact linear algebra over the integers and rationals.

Matrices are lists of rows of ``int`` (or ``Fraction``). Everything here is
exact; nothing goes through floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd


def _as_fraction_rows(rows):
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows):
    """Reduced row echelon form over Q. Returns ``(R, pivot_columns)``."""
    R = _as_fraction_rows(rows)
    if not R:
        return R, []
    n_rows, n_cols = len(R), len(R[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if R[i][c] != 0), None)
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        inv = 1 / R[r][c]
        R[r] = [x * inv for x in R[r]]
        for i in range(n_rows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def transpose(rows):
    return [list(col) for col in zip(*rows)]


def _primitive(vec):
    """Scale a rational vector to a primitive integer vector."""
    den = reduce(lambda a, b: a * b // gcd(a, b), (Fraction(x).denominator for x in vec), 1)
    ints = [int(Fraction(x) * den) for x in vec]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def integer_kernel(rows, n_cols: int | None = None) -> list[list[int]]:
    """Basis of the rational kernel of ``rows``, each vector scaled to primitive integers."""
    if n_cols is None:
        n_cols = len(rows[0]) if rows else 0
    if not rows:
        return [[int(i == j) for j in range(n_cols)] for i in range(n_cols)]
    R, pivots = rref(rows)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        basis.append(_primitive(v))
    return basis


def det(rows) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss elimination)."""
    M = [list(map(int, row)) for row in rows]
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def solve(rows, rhs):
    """Solve a square nonsingular system exactly; returns a list of ``Fraction``."""
    n = len(rows)
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    R, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return [R[i][n] for i in range(n)]


def column_lattice_basis(rows) -> list[list[int]]:
    """Integer basis of the lattice spanned by the columns of an integer matrix.

    Returns a matrix ``H`` (same number of rows, ``rank`` columns) whose columns
    generate exactly the same sublattice of ``Z^m`` as the columns of ``rows``.
    Column operations are unimodular (gcd steps), so the lattice is preserved.
    """
    if not rows:
        return []
    m = len(rows)
    cols = [list(map(int, c)) for c in zip(*rows)]
    basis = []
    for r in range(m):
        active = [c for c in cols if c[r] != 0]
        rest = [c for c in cols if c[r] == 0]
        while len(active) > 1:
            active.sort(key=lambda c: abs(c[r]))
            head = active[0]
            nxt = []
            for c in active[1:]:
                q = c[r] // head[r]
                c = [a - q * b for a, b in zip(c, head)]
                (nxt if c[r] != 0 else rest).append(c)
            active = [head] + nxt
        if active:
            basis.append(active[0])
        cols = [c for c in rest if any(c)]
    return transpose(basis) if basis else [[] for _ in range(m)]
