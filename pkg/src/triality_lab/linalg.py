"""Dense exact linear algebra on lists of rows.

Elimination is fraction-free (Bareiss): rational matrices are first scaled
row-wise to integers, so the forward pass runs on Python ints and every
intermediate division is exact.  The same routine computes determinants of
matrices whose entries are polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm, prod
from typing import Callable, Sequence

from .errors import DimensionMismatch

__all__ = [
    "bareiss_echelon",
    "det",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "in_span",
    "same_span",
    "identity",
    "zeros",
    "matmul",
    "matvec",
    "transpose",
    "mat_add",
    "mat_sub",
    "mat_scale",
    "mat_pow",
    "trace",
]

Matrix = list


def _generic_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact integer division in Bareiss step")
        return q
    if hasattr(a, "exact_div"):
        return a.exact_div(b)
    return a / b


def _is_rational_matrix(rows) -> bool:
    return all(isinstance(x, (int, Fraction)) for row in rows for x in row)


def _integerize(rows) -> list:
    out = []
    for row in rows:
        m = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        out.append([int(Fraction(x) * m) for x in row])
    return out


def bareiss_echelon(rows: Sequence[Sequence], ncols: int | None = None, div: Callable | None = None):
    """Fraction-free row echelon form.

    Returns ``(matrix, pivot_columns, swaps)``.  Entries must support ``*``,
    ``-`` and an exact division given by ``div``.
    """
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    div = div or _generic_div
    n = len(m)
    prev = 1
    pivots = []
    swaps = 0
    r = 0
    for c in range(ncols):
        if r == n:
            break
        p = next((i for i in range(r, n) if m[i][c]), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
            swaps += 1
        piv = m[r][c]
        row_r = m[r]
        for i in range(r + 1, n):
            row_i = m[i]
            mic = row_i[c]
            for j in range(c + 1, ncols):
                row_i[j] = div(piv * row_i[j] - mic * row_r[j], prev)
            row_i[c] = 0 * piv
        prev = piv
        pivots.append(c)
        r += 1
    return m, pivots, swaps


def det(rows: Sequence[Sequence], div: Callable | None = None):
    """Determinant by Bareiss elimination; works over polynomial rings."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionMismatch("determinant of a non-square matrix")
    if n == 0:
        return 1
    if _is_rational_matrix(rows):
        mults = [lcm(*(Fraction(x).denominator for x in row)) for row in rows]
        ints = [[int(Fraction(x) * k) for x in row] for row, k in zip(rows, mults)]
        d = _bareiss_det(ints, div)
        scale = prod(mults)
        return Fraction(d, scale) if scale != 1 or any(isinstance(x, Fraction) for r in rows for x in r) else d
    return _bareiss_det(rows, div)


def _bareiss_det(rows, div):
    n = len(rows)
    m, pivots, swaps = bareiss_echelon(rows, n, div)
    if len(pivots) < n:
        return 0 * m[0][0]
    d = m[n - 1][n - 1]
    return -d if swaps % 2 else d


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form over a field: ``(nonzero_rows, pivots)``."""
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    rational = _is_rational_matrix(rows)
    work = _integerize(rows) if rational else rows
    m, pivots, _ = bareiss_echelon(work, ncols)
    red = []
    for i, c in enumerate(pivots):
        piv = m[i][c]
        if rational:
            red.append([Fraction(x, piv) for x in m[i]])
        else:
            red.append([x / piv for x in m[i]])
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        for k in range(i):
            f = red[k][c]
            if f:
                rk, ri = red[k], red[i]
                for j in range(c, ncols):
                    if ri[j]:
                        rk[j] = rk[j] - f * ri[j]
    return red, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    rows = [list(r) for r in rows]
    if _is_rational_matrix(rows):
        rows = _integerize(rows)
    return len(bareiss_echelon(rows)[1])


def kernel_basis(rows: Sequence[Sequence], ncols: int | None = None, one=1) -> list:
    """Basis of the right null space, one vector per free column.

    Each vector has a 1 at its free column and zeros at the other free
    columns (the canonical reduced-echelon basis).
    """
    if ncols is None:
        if not rows:
            raise DimensionMismatch("ncols required for an empty matrix")
        ncols = len(rows[0])
    zero = one - one
    if not rows:
        return [[one if i == j else zero for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [zero] * ncols
        v[f] = one
        for i, c in enumerate(pivots):
            v[c] = -red[i][f]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence], b: Sequence):
    """One solution of ``a x = b`` (free variables zero), or None."""
    nrows = len(a)
    if len(b) != nrows:
        raise DimensionMismatch("right-hand side length")
    ncols = len(a[0]) if a else 0
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    zero = 0
    x = [zero] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][ncols]
    return x


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    if not any(v):
        return True
    if not vectors:
        return False
    cols = [list(col) for col in zip(*vectors)]
    return solve(cols, list(v)) is not None


def same_span(u: Sequence[Sequence], w: Sequence[Sequence]) -> bool:
    ru, rw = rank(u), rank(w)
    return ru == rw == rank(list(u) + list(w))


def identity(n: int, one=1) -> Matrix:
    zero = one - one
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(n: int, m: int | None = None) -> Matrix:
    return [[0] * (n if m is None else m) for _ in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    if a and len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x?")
    ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * ncols
        for k, x in enumerate(row):
            if x:
                brow = b[k]
                for j in range(ncols):
                    y = brow[j]
                    if y:
                        acc[j] = acc[j] + x * y
        out.append(acc)
    return out


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum((x * y for x, y in zip(row, v) if x and y), 0) for row in a]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_add(a, b) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, s) -> Matrix:
    return [[x * s for x in row] for row in a]


def mat_pow(a, k: int) -> Matrix:
    result = identity(len(a))
    for _ in range(k):
        result = matmul(result, a)
    return result


def trace(a):
    return sum((a[i][i] for i in range(len(a))), 0)
