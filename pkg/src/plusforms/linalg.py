"""Exact linear algebra over Q: fraction-free row reduction and char polys."""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def rref_exact(rows: list[list]) -> tuple[int, list[list[Fraction]], list[list[Fraction]]]:
    """Fraction-free (Bareiss-style) reduction of a rational matrix.

    Returns (rank, reduced rows in echelon form with unit pivots, kernel
    basis).  The elimination itself runs on integer rows obtained by clearing
    denominators, with the Bareiss exact-division step keeping entry growth
    polynomial; the echelon rows are rescaled back to Fractions at the end.
    """
    if not rows:
        return 0, [], []
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("rref_exact needs a rectangular input")
    mat = [_clear_denominators([Fraction(x) for x in row]) for row in rows]

    pivots: list[int] = []
    prev_pivot = 1
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        pc = mat[r][c]
        for i in range(r + 1, len(mat)):
            ic = mat[i][c]
            row = mat[i]
            top = mat[r]
            # Sylvester identity makes this division exact (Bareiss step)
            for j in range(c, ncols):
                row[j] = (pc * row[j] - ic * top[j]) // prev_pivot
        prev_pivot = pc
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    rank = r

    reduced = [[Fraction(x) for x in mat[i]] for i in range(rank)]
    # back substitution to fully reduced echelon form with unit pivots
    for i in range(rank - 1, -1, -1):
        c = pivots[i]
        pv = reduced[i][c]
        reduced[i] = [x / pv for x in reduced[i]]
        for i2 in range(i):
            f = reduced[i2][c]
            if f != 0:
                reduced[i2] = [a - f * b for a, b in zip(reduced[i2], reduced[i])]

    free_cols = [c for c in range(ncols) if c not in pivots]
    kernel = []
    for fc in free_cols:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -reduced[i][fc]
        kernel.append(vec)
    return rank, reduced, kernel


def _clear_denominators(row: list[Fraction]) -> list[int]:
    den = 1
    for x in row:
        den = den * x.denominator // gcd(den, x.denominator)
    return [int(x * den) for x in row]


def solve_exact(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve M x = b exactly; raises ValueError if inconsistent/underdetermined."""
    n = len(matrix)
    ncols = len(matrix[0])
    aug = [list(matrix[i]) + [rhs[i]] for i in range(n)]
    rank, red, _ = rref_exact(aug)
    rank_m, _, _ = rref_exact([list(r) for r in matrix])
    if rank != rank_m:
        raise ValueError("inconsistent linear system")
    if rank_m < ncols:
        raise ValueError("underdetermined linear system")
    sol = [Fraction(0)] * ncols
    for row in red:
        for c in range(ncols):
            if row[c] != 0:
                sol[c] = row[ncols]
                break
    return sol


def charpoly_exact(matrix: list[list[Fraction]]) -> list[Fraction]:
    """Characteristic polynomial det(xI - M) via Faddeev-LeVerrier.

    Returns coefficients [c_0, ..., c_n] with c_n = 1, exact rationals.
    """
    n = len(matrix)
    m = [[Fraction(x) for x in row] for row in matrix]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    aux = [[Fraction(0)] * n for _ in range(n)]
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    mk = ident
    for k in range(1, n + 1):
        mk = _mat_mul(m, mk)
        ck = -_trace(mk) / k
        coeffs[n - k] = ck
        if k < n:
            mk = [[mk[i][j] + (ck if i == j else 0) for j in range(n)] for i in range(n)]
    return coeffs


def _mat_mul(a, b):
    n = len(a)
    p = len(b[0])
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(p)] for i in range(n)]


def _trace(m):
    return sum(m[i][i] for i in range(len(m)))
