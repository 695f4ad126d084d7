"""
Test cases for exact linear algebra.
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from errors import InconsistentSystemError, SingularMatrixError
from linalg import determinant, identity_matrix, inverse_matrix, row_rank, solve_linear, transpose
from symexpr import I, ONE, ZERO, Expression

x = Expression.coordinate('x')
y = Expression.coordinate('y')


def _c(value):
    return Expression.constant(value)


def _multiply(a, b):
    columns = transpose(b)
    result = []
    for row in a:
        result_row = []
        for column in columns:
            total = ZERO
            for p, q in zip(row, column):
                total = total + p * q
            result_row.append(total)
        result.append(result_row)
    return result


def test_determinant():
    """Test Bareiss determinants."""
    print("=== Determinant ===")

    tests = [
        ([[_c(1), _c(2)], [_c(3), _c(4)]], _c(-2)),
        ([[x, y], [y, x]], x ** 2 - y ** 2),
        ([[ZERO, ONE], [ONE, ZERO]], _c(-1)),
        ([[x, ONE, ZERO], [ZERO, y, ONE], [ONE, ZERO, I]], I * x * y + 1),
        ([[x, y], [2 * x, 2 * y]], ZERO),
        (identity_matrix(4), ONE),
    ]

    for matrix, expected in tests:
        result = determinant(matrix)
        status = "✓" if result == expected else "✗"
        print(f"{status} det = {result} (expected: {expected})")
        assert result == expected


def test_inverse():
    matrices = [
        [[x, y], [ONE, x]],
        [[ZERO, ONE, x], [ONE, ZERO, ZERO], [y, ZERO, ONE]],
        [[I, x], [-x, I]],
    ]
    for matrix in matrices:
        inverse = inverse_matrix(matrix)
        assert _multiply(matrix, inverse) == identity_matrix(len(matrix))
        assert _multiply(inverse, matrix) == identity_matrix(len(matrix))


def test_singular():
    with pytest.raises(SingularMatrixError):
        inverse_matrix([[x, y], [x * y, y ** 2]])
    with pytest.raises(ValueError):
        inverse_matrix([[ONE, ZERO]])


def test_row_rank():
    tests = [
        ([[x, y], [2 * x, 2 * y]], 1),
        ([[x, y], [y, x]], 2),
        ([[ZERO, ZERO, ZERO]], 0),
        ([[ONE, x, y], [ZERO, ONE, x], [ONE, x + 1, y + x]], 2),
        ([], 0),
    ]
    for matrix, expected in tests:
        assert row_rank(matrix) == expected


def test_solve_linear():
    """Overdetermined but consistent systems are solved exactly."""
    first = [ONE, x, y]
    second = [ZERO, ONE, x]
    a, b = x + 1, I * y
    rhs = [a * p + b * q for p, q in zip(first, second)]
    assert solve_linear([first, second], rhs) == [a, b]

    with pytest.raises(InconsistentSystemError) as error:
        solve_linear([first, second], [ONE, ZERO, ZERO])
    assert error.value.residual is not None
    assert not error.value.residual.is_zero()

    with pytest.raises(InconsistentSystemError):
        solve_linear([first, [2 * p for p in first]], rhs)


def run_all_tests():
    """Run all tests."""
    print("=" * 50)
    print("Linear Algebra Tests")
    print("=" * 50)

    test_determinant()
    test_inverse()
    test_singular()
    test_row_rank()
    test_solve_linear()

    print("\n" + "=" * 50)
    print("Tests completed!")
    print("=" * 50)


if __name__ == '__main__':
    run_all_tests()
