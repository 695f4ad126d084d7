"""
Exact scalar arithmetic for the reduction engine.

Every scalar in the pipeline is an element of Q(i)(x, y, u1, u2, u3),
optionally extended by one square root beta with beta^2 = B:

    e = r0 + r1 * beta        r0, r1 in Q(i)(x, y, u1, u2, u3)

The rational parts are sympy sparse rational functions over the Gaussian
rationals, which are kept in lowest terms with a canonical denominator, so
structural equality is mathematical equality. beta only ever appears to the
first power: beta^2 folds back into B and beta^-1 into conj(B) * beta, which
is valid because |B| = 1 is certified when the radical is registered.

Flow for a radical:
1. register_radical(B) checks B * conj(B) - 1 == 0
2. If B is a perfect square in the field, beta is bound to that root and
   never appears symbolically (B = 1 gives beta = 1)
3. Otherwise beta is a formal symbol carried in the r1 slot
"""

import sys
import os
import logging
from fractions import Fraction

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

import sympy
from sympy.polys.domains import QQ_I
from sympy.polys.fields import field

from errors import (
    BranchError,
    ExpressionError,
    PoleError,
    RadicalError,
    ZeroDenominatorError,
)

log = logging.getLogger(__name__)

# Real chart coordinates; z = x + i*y is only an abbreviation
COORDINATES = ('x', 'y', 'u1', 'u2', 'u3')

FIELD, _X, _Y, _U1, _U2, _U3 = field(','.join(COORDINATES), QQ_I)
_GENERATORS = dict(zip(COORDINATES, (_X, _Y, _U1, _U2, _U3)))
_RING_GENERATORS = dict(zip(COORDINATES, FIELD.ring.gens))


def _canonical(frac):
    """Re-cancel a field element so numerator and denominator are canonical."""
    return FIELD.new(frac.numer, frac.denom)


def _diff_frac(frac, generator):
    """Quotient rule over the polynomial ring; FracElement.diff rejects QQ_I denominators."""
    numer, denom = frac.numer, frac.denom
    return FIELD.new(numer.diff(generator) * denom - numer * denom.diff(generator),
                     denom * denom)


def _conjugate_coefficient(c):
    return QQ_I(c.x, -c.y)


def _conjugate_poly(p):
    return p.ring.from_dict(
        dict((monom, _conjugate_coefficient(c)) for monom, c in p.items())
    )


def _conjugate_frac(frac):
    return FIELD.new(_conjugate_poly(frac.numer), _conjugate_poly(frac.denom))


def _to_frac(value):
    """Convert an int, Fraction, string literal or sympy number to a field element."""
    if isinstance(value, Fraction):
        value = sympy.Rational(value.numerator, value.denominator)
    elif isinstance(value, str):
        value = sympy.sympify(value)
    if isinstance(value, sympy.Basic):
        try:
            return _canonical(FIELD.from_expr(value))
        except ValueError:
            raise ExpressionError("not a Gaussian-rational constant: %s" % (value,))
    return FIELD(value)


def gaussian_sqrt(value):
    """
    Exact square root of a Gaussian rational, or None.

    The root returned has positive real part, or positive imaginary part
    when the real part vanishes.

    Args:
        value: sympy number a + b*I with rational a, b

    Returns:
        sympy number or None when no root exists in Q(i)
    """
    value = sympy.sympify(value)
    a, b = sympy.re(value), sympy.im(value)
    if a == 0 and b == 0:
        return sympy.Integer(0)
    modulus = sympy.sqrt(a ** 2 + b ** 2)
    if not modulus.is_Rational:
        return None
    u = sympy.sqrt((modulus + a) / 2)
    v = sympy.sqrt((modulus - a) / 2)
    if not (u.is_Rational and v.is_Rational):
        return None
    if b < 0:
        v = -v
    return u + v * sympy.I


def _poly_square_root(poly):
    """
    Square root of a polynomial over Q(i), as (constant, sympy expression).

    Returns None when some irreducible factor has odd multiplicity.
    """
    if poly.is_ground:
        return QQ_I.to_sympy(poly.LC), sympy.Integer(1)
    coeff, factors = sympy.factor_list(poly.as_expr(), *FIELD.symbols, gaussian=True)
    root = sympy.Integer(1)
    for factor, multiplicity in factors:
        if multiplicity % 2:
            return None
        root = root * factor ** (multiplicity // 2)
    return coeff, root


def _field_square_root(frac):
    """Square root of a rational function in the field, or None."""
    numer = _poly_square_root(frac.numer)
    denom = _poly_square_root(frac.denom)
    if numer is None or denom is None:
        return None
    ratio = QQ_I.from_sympy(sympy.expand(numer[0])) / QQ_I.from_sympy(sympy.expand(denom[0]))
    constant = gaussian_sqrt(QQ_I.to_sympy(ratio))
    if constant is None:
        return None
    root = _canonical(FIELD.from_expr(sympy.expand(constant) * numer[1] / denom[1]))
    if root * root != frac:
        log.debug("square root candidate rejected for %s", frac)
        return None
    return root


class Radical(object):
    """
    Handle for beta = B^(1/2) with |B| = 1.

    Build it with register_radical(). When B is a square in the field,
    `root` holds that square root and beta is substituted by it.
    """

    __slots__ = ('argument', 'root')

    def __init__(self, argument, root=None):
        self.argument = argument
        self.root = root

    @property
    def is_split(self):
        return self.root is not None

    def beta(self):
        """beta as an Expression."""
        if self.root is not None:
            return Expression(self.root)
        return Expression(FIELD.zero, FIELD.one, self)

    def b_expression(self):
        return Expression(self.argument)

    def __eq__(self, other):
        return isinstance(other, Radical) and self.argument == other.argument

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(('radical', self.argument))

    def __repr__(self):
        return "Radical(B=%s)" % (Expression(self.argument),)


def _common_radical(first, second):
    if first.radical is None:
        return second.radical
    if second.radical is None or second.radical == first.radical:
        return first.radical
    raise RadicalError("expressions carry different radicals")


def _coerce(value):
    if isinstance(value, Expression):
        return value
    if isinstance(value, (int, Fraction, str, sympy.Basic)):
        return Expression(_to_frac(value))
    if FIELD.is_element(value):
        return Expression(value)
    return None


class Expression(object):
    """
    Immutable exact scalar r0 + r1 * beta.

    Arithmetic operators accept ints, Fractions and sympy numbers on either
    side. Equality is exact; use is_zero() for the zero test.
    """

    __slots__ = ('rational', 'radical_part', 'radical')

    def __init__(self, rational, radical_part=None, radical=None):
        if radical_part is None or not radical_part:
            radical_part = FIELD.zero
            radical = None
        elif radical is None:
            raise RadicalError("beta term without a registered radical")
        elif radical.root is not None:
            rational = rational + radical_part * radical.root
            radical_part = FIELD.zero
            radical = None
        self.rational = rational
        self.radical_part = radical_part
        self.radical = radical

    # Construction helpers

    @classmethod
    def constant(cls, value):
        return cls(_to_frac(value))

    @classmethod
    def coordinate(cls, name):
        try:
            return cls(_GENERATORS[name])
        except KeyError:
            raise ExpressionError("unknown coordinate: %s" % (name,))

    # Predicates

    def is_zero(self):
        return not self.rational and not self.radical_part

    def has_radical(self):
        return self.radical is not None

    def is_constant(self):
        return (not self.radical_part
                and self.rational.numer.is_ground
                and self.rational.denom.is_ground)

    def size(self):
        """Number of stored monomials; used to pick cheap pivots."""
        return (len(self.rational.numer) + len(self.rational.denom)
                + len(self.radical_part.numer) + len(self.radical_part.denom))

    # Arithmetic

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        radical = _common_radical(self, other)
        return Expression(self.rational + other.rational,
                          self.radical_part + other.radical_part, radical)

    __radd__ = __add__

    def __neg__(self):
        return Expression(-self.rational, -self.radical_part, self.radical)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        radical = _common_radical(self, other)
        r0, r1 = self.rational, self.radical_part
        s0, s1 = other.rational, other.radical_part
        if radical is None:
            return Expression(r0 * s0)
        # beta^2 = B
        return Expression(r0 * s0 + r1 * s1 * radical.argument,
                          r0 * s1 + r1 * s0, radical)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDenominatorError("division by an expression that is identically 0")
        if self.radical is None:
            return Expression(1 / self.rational)
        norm = (self.rational * self.rational
                - self.radical_part * self.radical_part * self.radical.argument)
        # norm vanishes only when B is a square, and split radicals never get here
        return Expression(self.rational / norm, -self.radical_part / norm, self.radical)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            raise ExpressionError("only integer exponents are supported")
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Expression(FIELD.one)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # Equality

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return (self.rational == other.rational
                and self.radical_part == other.radical_part
                and self.radical == other.radical)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        key = self.radical.argument if self.radical is not None else None
        return hash((self.rational, self.radical_part, key))

    def __str__(self):
        from expr_parser import format_expression
        return format_expression(self)

    def __repr__(self):
        return "Expression(%s)" % (self,)


ZERO = Expression(FIELD.zero)
ONE = Expression(FIELD.one)
I = Expression(FIELD(sympy.I))


class Point(object):
    """Five exact rational coordinate values (x, y, u1, u2, u3)."""

    __slots__ = ('values',)

    def __init__(self, values):
        values = tuple(sympy.Rational(v) for v in values)
        if len(values) != len(COORDINATES):
            raise ValueError("a point needs %d coordinates, got %d"
                             % (len(COORDINATES), len(values)))
        self.values = values

    @classmethod
    def parse(cls, text):
        """Parse "r,r,r,r,r" with integer or p/q entries."""
        parts = [part.strip() for part in text.split(',')]
        try:
            return cls(sympy.Rational(part) for part in parts)
        except (TypeError, ValueError, sympy.SympifyError):
            raise ValueError("invalid point: %r" % (text,))

    def as_strings(self):
        return [str(v) for v in self.values]

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other):
        return isinstance(other, Point) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return "Point(%s)" % (", ".join(self.as_strings()),)


def _evaluate_poly(poly, values):
    total = QQ_I.zero
    for monom, coeff in poly.items():
        term = coeff
        for value, power in zip(values, monom):
            if power:
                term = term * value ** power
        total = total + term
    return total


def _evaluate_frac(frac, values):
    denom = _evaluate_poly(frac.denom, values)
    if not denom:
        raise PoleError("denominator vanishes at the point")
    return _evaluate_poly(frac.numer, values) / denom


# Operations

def normalize(e):
    """
    Return the canonical form of e.

    Args:
        e: Expression

    Returns:
        Expression: same value with freshly cancelled parts
    """
    if e.radical is None:
        return Expression(_canonical(e.rational))
    return Expression(_canonical(e.rational), _canonical(e.radical_part), e.radical)


def is_zero(e):
    return _coerce(e).is_zero()


def differentiate(e, coordinate):
    """
    Partial derivative with respect to a chart coordinate.

    d(beta)/dc = beta * (dB/dc) / (2B), folded back into the beta slot.

    Args:
        e: Expression
        coordinate: one of COORDINATES

    Returns:
        Expression
    """
    try:
        generator = _RING_GENERATORS[coordinate]
    except KeyError:
        raise ExpressionError("unknown coordinate: %s" % (coordinate,))
    rational = _diff_frac(e.rational, generator)
    if e.radical is None:
        return Expression(rational)
    argument = e.radical.argument
    beta_part = (_diff_frac(e.radical_part, generator)
                 + e.radical_part * _diff_frac(argument, generator) / (2 * argument))
    return Expression(rational, beta_part, e.radical)


def conjugate(e):
    """
    Complex conjugate. Coordinates are real; conj(beta) = conj(B) * beta.
    """
    e = _coerce(e)
    rational = _conjugate_frac(e.rational)
    if e.radical is None:
        return Expression(rational)
    beta_part = _conjugate_frac(e.radical_part) * _conjugate_frac(e.radical.argument)
    return Expression(rational, beta_part, e.radical)


def is_real(e):
    return (conjugate(e) - e).is_zero()


def register_radical(b_expr):
    """
    Register beta = B^(1/2) for a unit-modulus B.

    Args:
        b_expr: beta-free Expression with B * conj(B) = 1

    Returns:
        Radical

    Raises:
        RadicalError: B carries beta itself, or |B| != 1 (residual attached)
    """
    b_expr = _coerce(b_expr)
    if b_expr.has_radical():
        raise RadicalError("radical argument must be free of beta")
    residual = b_expr * conjugate(b_expr) - 1
    if not residual.is_zero():
        raise RadicalError("B * conj(B) - 1 does not vanish", residual)
    root = _field_square_root(b_expr.rational)
    if root is not None:
        log.debug("radical argument is a perfect square; beta = %s", Expression(root))
    return Radical(b_expr.rational, root)


def evaluate(e, point, branch=None):
    """
    Exact value of e at a point.

    Args:
        e: Expression
        point: Point
        branch: +1 or -1 selecting beta(p) = branch * principal root;
            required only when e carries beta

    Returns:
        sympy number in Q(i)

    Raises:
        PoleError: a denominator vanishes at the point
        BranchError: beta(p) is not exact or no branch was given
    """
    e = _coerce(e)
    values = [QQ_I.from_sympy(v) for v in point]
    result = _evaluate_frac(e.rational, values)
    if e.radical is not None:
        if branch not in (1, -1):
            raise BranchError("evaluating beta needs branch +1 or -1")
        argument = _evaluate_frac(e.radical.argument, values)
        root = gaussian_sqrt(QQ_I.to_sympy(argument))
        if root is None:
            raise BranchError("B(p) has no square root in Q(i)")
        beta_value = QQ_I.from_sympy(sympy.expand(branch * root))
        result = result + _evaluate_frac(e.radical_part, values) * beta_value
    return QQ_I.to_sympy(result)


def coordinate(name):
    return Expression.coordinate(name)


def constant(value):
    return Expression.constant(value)
