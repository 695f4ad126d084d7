"""
Test cases for the expression parser and printer.

1. Parsing into canonical Expressions
2. Canonical printing
3. Error positions
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import pytest

from errors import ParseError
from expr_parser import format_expression, parse_expression, tokenize
from symexpr import I, Expression, register_radical

x = Expression.coordinate('x')
y = Expression.coordinate('y')
u2 = Expression.coordinate('u2')


def test_parse():
    """Test parsing."""
    print("=== Parsing ===")

    tests = [
        ('x^2+y^2', x ** 2 + y ** 2),
        ('2*x*(x^2+y^2)', 2 * x ** 3 + 2 * x * y ** 2),
        ('(x^2+y^2)*(7/2*x^2-1/2*y^2)',
         Expression.constant('7/2') * x ** 4 + 3 * x ** 2 * y ** 2 - Expression.constant('1/2') * y ** 4),
        ('i*x - u2', I * x - u2),
        ('x^-2', 1 / x ** 2),
        ('-x + 1', 1 - x),
        ('(x+y)/(x-y)', (x + y) / (x - y)),
        ('3/4', Expression.constant('3/4')),
        ('  x  *  y ', x * y),
    ]

    for text, expected in tests:
        result = parse_expression(text)
        status = "✓" if result == expected else "✗"
        print(f"{status} {text!r} -> {result}")
        assert result == expected


def test_print():
    """Test canonical printing."""
    print("\n=== Printing ===")

    tests = [
        (2 * x ** 3 + 2 * x * y ** 2, '2*x^3+2*x*y^2'),
        (x ** 2 + y ** 2, 'x^2+y^2'),
        (I * x, 'i*x'),
        (-I * y, '-i*y'),
        ((1 + 2 * I) * x, '(1+2*i)*x'),
        (Expression.constant('1/2') * x, '1/2*x'),
        (Expression.constant(0), '0'),
        (Expression.constant(1), '1'),
        (-(x ** 2), '-1*x^2'),
        (x - y, 'x-y'),
    ]

    for e, expected in tests:
        result = format_expression(e)
        status = "✓" if result == expected else "✗"
        print(f"{status} {result} (expected: {expected})")
        assert result == expected
        assert str(e) == expected


def test_printed_text_parses_back():
    cases = [
        -(x ** 2) + y,
        (x + I) / (x ** 2 + y ** 2 + 1),
        Expression.constant('-3/7') * u2 ** 3,
        (2 - I) * x * y + I,
    ]
    for e in cases:
        assert parse_expression(str(e)) == e


def test_beta_identifier():
    radical = register_radical((x + I) / (x - I))
    beta = radical.beta()
    assert parse_expression('beta', radical) == beta
    assert parse_expression('x*beta + 1', radical) == x * beta + 1
    e = x * beta + y
    assert parse_expression(str(e), radical) == e
    with pytest.raises(ParseError):
        parse_expression('beta')


def test_rational_literals():
    """A p/q literal is a single number and binds before '^'."""
    print("\n=== Rational literals ===")

    tests = [
        ('2/3^2', Expression.constant('4/9')),
        ('2/(3^2)', Expression.constant('2/9')),
        ('2/x^2', 2 / x ** 2),
        ('7/2*x^2', Expression.constant('7/2') * x ** 2),
        ('x^2/3', x ** 2 / 3),
        ('-1/2^3', Expression.constant('-1/8')),
        ('1/2/3', Expression.constant('1/6')),
    ]
    for text, expected in tests:
        result = parse_expression(text)
        status = "✓" if result == expected else "✗"
        print(f"{status} {text} -> {result} (expected: {expected})")
        assert result == expected


def test_errors():
    """Malformed input reports the offending position."""
    tests = [
        ('1/0', 'zero denominator literal', 1),
        ('x/(y-y)', 'zero denominator', 1),
        ('z+1', 'unknown identifier', 0),
        ('x+', 'unexpected end of input', 2),
        ('3 $ 4', 'unexpected character', 2),
        ('(x+1', "expected ')'", 4),
        ('x^y', 'integer exponent expected', 2),
        ('x y', 'unexpected', 2),
    ]
    for text, message, position in tests:
        with pytest.raises(ParseError) as error:
            parse_expression(text)
        assert message in str(error.value)
        assert error.value.position == position


def test_tokenize():
    tokens = tokenize('u1^2 + 10')
    assert [t.text for t in tokens] == ['u1', '^', '2', '+', '10', '']
    assert [t.position for t in tokens] == [0, 2, 3, 5, 7, 9]


def run_all_tests():
    """Run all tests."""
    print("=" * 50)
    print("Parser Tests")
    print("=" * 50)

    test_parse()
    test_print()
    test_printed_text_parses_back()
    test_beta_identifier()
    test_rational_literals()
    test_errors()
    test_tokenize()

    print("\n" + "=" * 50)
    print("Tests completed!")
    print("=" * 50)


if __name__ == '__main__':
    run_all_tests()
