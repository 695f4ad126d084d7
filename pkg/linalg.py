"""
Exact linear algebra over Expressions.

Matrices are lists of rows of Expressions. All zero tests are exact, so
a "singular" verdict means the determinant is identically zero as a
rational function, not merely at some point.
"""

import sys
import os
import logging

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from errors import InconsistentSystemError, SingularMatrixError
from symexpr import ONE, ZERO

log = logging.getLogger(__name__)


def identity_matrix(n):
    """Construct an n x n identity matrix of Expressions."""
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def transpose(rows):
    return [list(column) for column in zip(*rows)]


def _pick_pivot(rows, column, start):
    """Row index of the cheapest nonzero entry in a column, or None."""
    best, best_size = None, None
    for r in range(start, len(rows)):
        entry = rows[r][column]
        if entry.is_zero():
            continue
        size = entry.size()
        if best is None or size < best_size:
            best, best_size = r, size
    return best


def determinant(rows):
    """
    Determinant by fraction-free (Bareiss) elimination.

    Args:
        rows: square matrix of Expressions

    Returns:
        Expression
    """
    n = len(rows)
    if n == 0:
        return ONE
    work = [list(row) for row in rows]
    sign = 1
    previous = ONE
    for k in range(n - 1):
        pivot = _pick_pivot(work, k, k)
        if pivot is None:
            return ZERO
        if pivot != k:
            work[k], work[pivot] = work[pivot], work[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                work[i][j] = (work[i][j] * work[k][k] - work[i][k] * work[k][j]) / previous
            work[i][k] = ZERO
        previous = work[k][k]
    result = work[n - 1][n - 1]
    return result if sign > 0 else -result


def inverse_matrix(rows):
    """
    Inverse of a square matrix by Gauss-Jordan elimination on [X I].

    Args:
        rows: square matrix of Expressions

    Returns:
        list of rows: the inverse

    Raises:
        SingularMatrixError: determinant is identically zero
    """
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ValueError("matrix is not square")

    work = [list(row) + unit for row, unit in zip(rows, identity_matrix(n))]

    for i in range(n):
        pivot = _pick_pivot(work, i, i)
        if pivot is None:
            raise SingularMatrixError("determinant is identically 0 (no pivot in column %d)" % i,
                                      residual=ZERO)
        if pivot != i:
            work[i], work[pivot] = work[pivot], work[i]

        scale = work[i][i].inverse()
        work[i] = [entry * scale for entry in work[i]]

        for j in range(n):
            if j == i or work[j][i].is_zero():
                continue
            factor = work[j][i]
            work[j] = [a - factor * b for a, b in zip(work[j], work[i])]

    return [row[n:] for row in work]


def row_rank(rows):
    """
    Rank of a (possibly rectangular) matrix by exact elimination.

    Args:
        rows: list of rows of Expressions

    Returns:
        int
    """
    work = [list(row) for row in rows]
    if not work:
        return 0
    n_rows, n_cols = len(work), len(work[0])
    rank = 0
    for column in range(n_cols):
        if rank == n_rows:
            break
        pivot = _pick_pivot(work, column, rank)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        scale = work[rank][column].inverse()
        for r in range(rank + 1, n_rows):
            if work[r][column].is_zero():
                continue
            factor = work[r][column] * scale
            work[r] = [a - factor * b for a, b in zip(work[r], work[rank])]
        rank += 1
    return rank


def solve_linear(columns, rhs):
    """
    Solve sum_k c_k * columns[k] = rhs exactly.

    The system may be overdetermined; it must have full column rank and be
    consistent, otherwise the decomposition is rejected.

    Args:
        columns: list of vectors (lists of Expressions), the unknowns' columns
        rhs: vector of Expressions

    Returns:
        list of Expressions c_k

    Raises:
        InconsistentSystemError: columns dependent, or rhs outside their span
    """
    n_unknowns = len(columns)
    n_equations = len(rhs)
    work = [[columns[k][r] for k in range(n_unknowns)] + [rhs[r]] for r in range(n_equations)]

    pivot_rows = []
    row = 0
    for column in range(n_unknowns):
        pivot = _pick_pivot(work, column, row)
        if pivot is None:
            raise InconsistentSystemError("decomposition basis is degenerate at column %d" % column)
        work[row], work[pivot] = work[pivot], work[row]
        scale = work[row][column].inverse()
        work[row] = [entry * scale for entry in work[row]]
        for r in range(n_equations):
            if r == row or work[r][column].is_zero():
                continue
            factor = work[r][column]
            work[r] = [a - factor * b for a, b in zip(work[r], work[row])]
        pivot_rows.append(row)
        row += 1

    for r in range(row, n_equations):
        if not work[r][n_unknowns].is_zero():
            raise InconsistentSystemError("right-hand side is outside the span",
                                          residual=work[r][n_unknowns])

    return [work[r][n_unknowns] for r in pivot_rows]
