"""
Test cases for the exact scalar kernel.

1. Field arithmetic and canonical forms
2. Derivatives and conjugation
3. Radicals: split and formal beta
4. Evaluation at points
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest
import sympy

from errors import BranchError, PoleError, RadicalError, ZeroDenominatorError
from symexpr import (
    I,
    ONE,
    ZERO,
    Expression,
    Point,
    conjugate,
    differentiate,
    evaluate,
    gaussian_sqrt,
    is_real,
    is_zero,
    normalize,
    register_radical,
)

x = Expression.coordinate('x')
y = Expression.coordinate('y')
u1 = Expression.coordinate('u1')


def test_arithmetic():
    """Test canonical arithmetic."""
    print("=== Arithmetic ===")

    tests = [
        ((x + 1) * (x - 1), x ** 2 - 1),
        ((x ** 2 - 1) / (x - 1), x + 1),
        ((x + y) / (x + y), ONE),
        (x - x, ZERO),
        ((x + 1) ** -1 * (x + 1), ONE),
        (I * I, Expression.constant(-1)),
        (Expression.constant('1/2') + Expression.constant('1/3'), Expression.constant('5/6')),
        (2 * x / 4, x / 2),
    ]

    for result, expected in tests:
        status = "✓" if result == expected else "✗"
        print(f"{status} {result} (expected: {expected})")
        assert result == expected


def test_zero_and_normalize():
    assert is_zero(x * y - y * x)
    assert not is_zero(x)
    e = (x ** 2 + 2 * x + 1) / (x + 1)
    assert normalize(e) == x + 1
    assert normalize(normalize(e)) == normalize(e)


def test_inverse_of_zero():
    with pytest.raises(ZeroDenominatorError):
        (x - x).inverse()
    with pytest.raises(ZeroDenominatorError):
        ONE / ZERO


def test_differentiate():
    """Test partial derivatives."""
    print("\n=== Derivatives ===")

    tests = [
        (x ** 3, 'x', 3 * x ** 2),
        (x * y, 'y', x),
        (1 / x, 'x', -1 / x ** 2),
        (u1 * x, 'u1', x),
        (I * y, 'x', ZERO),
    ]

    for e, name, expected in tests:
        result = differentiate(e, name)
        status = "✓" if result == expected else "✗"
        print(f"{status} d({e})/d{name} = {result} (expected: {expected})")
        assert result == expected


def test_differentiate_rational_functions():
    """Derivatives of non-polynomial elements with Gaussian coefficients."""
    print("\n=== Derivatives of quotients ===")

    tests = [
        (x * u1 / (1 + x ** 2), 'u1', x / (1 + x ** 2)),
        (x * u1 / (1 + x ** 2), 'x', u1 * (1 - x ** 2) / (1 + x ** 2) ** 2),
        (I * x / (x + I * y), 'y', x / (x + I * y) ** 2),
        ((2 + I) / (u1 - x), 'u1', -(2 + I) / (u1 - x) ** 2),
        (x / (y ** 2 + 1), 'u1', ZERO),
    ]

    for e, name, expected in tests:
        result = differentiate(e, name)
        status = "✓" if result == expected else "✗"
        print(f"{status} d({e})/d{name} = {result} (expected: {expected})")
        assert result == expected

    # Leibniz on a product of quotients
    f = (x + I * u1) / (1 + y ** 2)
    g = u1 / (x - I)
    for name in ('x', 'y', 'u1'):
        assert differentiate(f * g, name) == differentiate(f, name) * g + f * differentiate(g, name)

    # beta slot carrying a quotient
    B = (x + I) / (x - I)
    beta = register_radical(B).beta()
    e = beta * u1 / x
    expected = (u1 / x) * beta * differentiate(B, 'x') / (2 * B) - beta * u1 / x ** 2
    assert differentiate(e, 'x') == expected
    assert differentiate(e, 'u1') == beta / x


def test_conjugate():
    tests = [
        (I * x, -I * x),
        (x + I * y, x - I * y),
        ((1 + 2 * I) / (x + I), (1 - 2 * I) / (x - I)),
    ]
    for e, expected in tests:
        assert conjugate(e) == expected
        assert conjugate(conjugate(e)) == e

    assert is_real(x ** 2 + y ** 2)
    assert is_real((x + I * y) * (x - I * y))
    assert not is_real(I * x)


def test_gaussian_sqrt():
    tests = [
        (4, 2),
        (-1, sympy.I),
        (sympy.Rational(9, 4), sympy.Rational(3, 2)),
        (2 * sympy.I, 1 + sympy.I),
        (3 + 4 * sympy.I, 2 + sympy.I),
        (2, None),
        (sympy.I, None),
    ]
    for value, expected in tests:
        result = gaussian_sqrt(value)
        if expected is None:
            assert result is None
        else:
            assert sympy.simplify(result - expected) == 0


def test_split_radicals():
    """Perfect squares bind beta to an explicit root."""
    tests = [
        ONE,
        Expression.constant(-1),
        (x + I) ** 2 / (x - I) ** 2,
    ]
    for B in tests:
        radical = register_radical(B)
        assert radical.is_split
        beta = radical.beta()
        assert not beta.has_radical()
        assert beta * beta == B

    assert register_radical(ONE).beta() == ONE


def test_formal_radical():
    """A non-square unit-modulus B keeps beta symbolic."""
    B = (x + I) / (x - I)
    radical = register_radical(B)
    assert not radical.is_split

    beta = radical.beta()
    assert beta.has_radical()
    assert beta * beta == B
    assert beta * conjugate(beta) == ONE
    assert beta * beta.inverse() == ONE
    assert (1 + beta) * (1 + beta).inverse() == ONE
    # d(beta) = beta * B' / (2B)
    assert differentiate(beta, 'x') == beta * differentiate(B, 'x') / (2 * B)
    assert differentiate(beta, 'y') == ZERO


def test_radical_errors():
    with pytest.raises(RadicalError) as error:
        register_radical(Expression.constant(2))
    assert error.value.residual == Expression.constant(3)

    with pytest.raises(RadicalError):
        register_radical(x)

    first = register_radical((x + I) / (x - I)).beta()
    second = register_radical((y + I) / (y - I)).beta()
    with pytest.raises(RadicalError):
        first + second


def test_evaluate():
    """Test exact evaluation."""
    print("\n=== Evaluation ===")

    p = Point([1, 2, 0, 0, sympy.Rational(1, 2)])
    tests = [
        (x ** 2 + y, 3),
        (x / y, sympy.Rational(1, 2)),
        (I * x + Expression.coordinate('u3'), sympy.Rational(1, 2) + sympy.I),
    ]
    for e, expected in tests:
        result = evaluate(e, p)
        status = "✓" if result == expected else "✗"
        print(f"{status} {e} at {p} = {result} (expected: {expected})")
        assert result == expected

    with pytest.raises(PoleError):
        evaluate(1 / x, Point([0, 1, 0, 0, 0]))

    radical = register_radical((x + I) / (x - I))
    with pytest.raises(BranchError):
        evaluate(radical.beta(), p)
    # x = 0 gives B = -1 and beta = +-i
    origin = Point([0, 0, 0, 0, 0])
    assert evaluate(radical.beta(), origin, branch=1) == sympy.I
    assert evaluate(radical.beta(), origin, branch=-1) == -sympy.I
    # x = 1 gives B = i, whose root is not in Q(i)
    with pytest.raises(BranchError):
        evaluate(radical.beta(), p, branch=1)


def test_point_parse():
    p = Point.parse("1, -2, 0, 3/4, 5")
    assert p.as_strings() == ['1', '-2', '0', '3/4', '5']
    for bad in ("1,2,3", "a,b,c,d,e"):
        with pytest.raises(ValueError):
            Point.parse(bad)


def run_all_tests():
    """Run all tests."""
    print("=" * 50)
    print("Scalar Kernel Tests")
    print("=" * 50)

    test_arithmetic()
    test_zero_and_normalize()
    test_inverse_of_zero()
    test_differentiate()
    test_differentiate_rational_functions()
    test_conjugate()
    test_gaussian_sqrt()
    test_split_radicals()
    test_formal_radical()
    test_radical_errors()
    test_evaluate()
    test_point_parse()

    print("\n" + "=" * 50)
    print("Tests completed!")
    print("=" * 50)


if __name__ == '__main__':
    run_all_tests()
