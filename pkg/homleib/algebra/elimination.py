"""
Fraction-free (Bareiss) elimination and reduced row echelon form.

Matrices here are plain lists of lists of Scalars; the LinearMap wrappers in
``linalg`` convert on the way in and out.
"""

from typing import List, Sequence, Tuple

from homleib.algebra.scalar import FieldSpec, Scalar

Matrix = List[List[Scalar]]


def copy_matrix(rows: Sequence[Sequence[Scalar]]) -> Matrix:
    return [list(row) for row in rows]


def bareiss_forward(rows: Sequence[Sequence[Scalar]], field: FieldSpec) -> Tuple[Matrix, int, List[int]]:
    """
    Fraction-free forward elimination.

    Every division below is exact: each intermediate entry is a minor of
    the input, so polynomial entries stay polynomial.

    Returns:
        (upper, sign, pivot_columns): the echelon matrix, the sign of the
        row permutation and the pivot column of each nonzero row.
    """
    m = copy_matrix(rows)
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    prev = field.one
    sign = 1
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        p = next((i for i in range(r, n_rows) if not m[i][c].is_zero), None)
        if p is None:
            continue
        if p != r:
            m[p], m[r] = m[r], m[p]
            sign = -sign
        pivot = m[r][c]
        for i in range(r + 1, n_rows):
            below = m[i][c]
            for j in range(c + 1, n_cols):
                m[i][j] = (pivot * m[i][j] - below * m[r][j]) / prev
            m[i][c] = field.zero
        prev = pivot
        pivots.append(c)
        r += 1
    return m, sign, pivots


def determinant(rows: Sequence[Sequence[Scalar]], field: FieldSpec) -> Scalar:
    n = len(rows)
    if n == 0:
        return field.one
    upper, sign, pivots = bareiss_forward(rows, field)
    if len(pivots) < n:
        return field.zero
    det = upper[n - 1][n - 1]
    return det if sign > 0 else -det


def rank(rows: Sequence[Sequence[Scalar]], field: FieldSpec) -> int:
    if not rows:
        return 0
    return len(bareiss_forward(rows, field)[2])


def back_substitute(upper: Matrix, n: int, rhs_col: int) -> List[Scalar]:
    """Solve the leading n×n triangular block of ``upper`` against one appended column."""
    x: List[Scalar] = [None] * n  # type: ignore[list-item]
    for i in range(n - 1, -1, -1):
        acc = upper[i][rhs_col]
        for j in range(i + 1, n):
            if not upper[i][j].is_zero:
                acc = acc - upper[i][j] * x[j]
        x[i] = acc / upper[i][i]
    return x


def rref(rows: Sequence[Sequence[Scalar]], field: FieldSpec) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form with the list of pivot columns."""
    m = copy_matrix(rows)
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        p = next((i for i in range(r, n_rows) if not m[i][c].is_zero), None)
        if p is None:
            continue
        m[p], m[r] = m[r], m[p]
        inv = m[r][c].inverse()
        m[r] = [entry * inv for entry in m[r]]
        for i in range(n_rows):
            if i != r and not m[i][c].is_zero:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def kernel_basis(rows: Sequence[Sequence[Scalar]], n_cols: int, field: FieldSpec) -> List[List[Scalar]]:
    """Basis of the right kernel, one vector per free column."""
    reduced, pivots = rref(rows, field) if rows else ([], [])
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [field.zero] * n_cols
        vec[f] = field.one
        for row_index, pc in enumerate(pivots):
            vec[pc] = -reduced[row_index][f]
        basis.append(vec)
    return basis
