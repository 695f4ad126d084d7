"""
Text form of Expressions: tokenizer, recursive-descent parser and printer.

Grammar:

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ('^' ['-'] int)?
    atom   := ident | number | '(' expr ')' | '-' atom
    ident  := 'x' | 'y' | 'u1' | 'u2' | 'u3' | 'i'   (and 'beta' with a radical)
    number := int | int '/' int

A p/q literal is one number, so it binds tighter than '^': "2/3^2" is
(2/3)^2 = 4/9, while "2/(3^2)" and "2/x^2" divide by the power. The
printer only emits p/q as a coefficient, never under an exponent.

The printer emits the same grammar with terms in lex order
(x > y > u1 > u2 > u3), so printing is canonical and re-parsing the
printed text gives back the same Expression.
"""

import sys
import os
import re

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from sympy.polys.domains import QQ, QQ_I

from errors import ParseError, ZeroDenominatorError
from symexpr import COORDINATES, Expression, I

TOKEN_PATTERN = re.compile(r'\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))')

OPERATORS = ('+', '-', '*', '/', '^', '(', ')')


class Token(object):
    """Token kinds"""
    number = 'number'
    identifier = 'identifier'
    operator = 'operator'
    eof = 'eof'

    def __init__(self, typ, text, position):
        self.typ = typ
        self.text = text
        self.position = position

    def __repr__(self):
        return "(%s, %r, %d)" % (self.typ, self.text, self.position)


def tokenize(text):
    """
    Split expression text into tokens.

    Args:
        text: expression string

    Returns:
        list of Token, ending with an eof token

    Raises:
        ParseError: character outside the grammar
    """
    tokens = []
    position = 0
    length = len(text)
    while True:
        match = TOKEN_PATTERN.match(text, position)
        if match is None or match.end() == position:
            break
        number, identifier, other = match.groups()
        start = match.start(match.lastindex)
        if number is not None:
            tokens.append(Token(Token.number, number, start))
        elif identifier is not None:
            tokens.append(Token(Token.identifier, identifier, start))
        elif other in OPERATORS:
            tokens.append(Token(Token.operator, other, start))
        else:
            raise ParseError("unexpected character %r" % (other,), start)
        position = match.end()
    if text[position:].strip():
        raise ParseError("unexpected input", position)
    tokens.append(Token(Token.eof, '', length))
    return tokens


class ExpressionParser(object):
    """
    Recursive-descent parser producing canonical Expressions.
    """

    def __init__(self, text, radical=None):
        self.text = text
        self.radical = radical
        self.tokens = tokenize(text)
        self.index = 0

    def parse(self):
        result = self._expr()
        token = self._peek()
        if token.typ != Token.eof:
            raise ParseError("unexpected %r" % (token.text,), token.position)
        return result

    def _peek(self):
        return self.tokens[self.index]

    def _next(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _accept(self, text):
        token = self._peek()
        if token.typ == Token.operator and token.text == text:
            self.index += 1
            return token
        return None

    def _expect(self, text):
        token = self._accept(text)
        if token is None:
            found = self._peek()
            raise ParseError("expected %r" % (text,), found.position)
        return token

    def _expr(self):
        result = self._term()
        while True:
            if self._accept('+'):
                result = result + self._term()
            elif self._accept('-'):
                result = result - self._term()
            else:
                return result

    def _term(self):
        result = self._factor()
        while True:
            if self._accept('*'):
                result = result * self._factor()
                continue
            slash = self._accept('/')
            if slash is None:
                return result
            divisor = self._factor()
            if divisor.is_zero():
                raise ParseError("zero denominator", slash.position)
            result = result / divisor

    def _factor(self):
        base = self._atom()
        caret = self._accept('^')
        if caret is None:
            return base
        negative = self._accept('-') is not None
        token = self._next()
        if token.typ != Token.number:
            raise ParseError("integer exponent expected", token.position)
        exponent = int(token.text)
        if negative:
            exponent = -exponent
        try:
            return base ** exponent
        except ZeroDenominatorError:
            raise ParseError("zero denominator", caret.position)

    def _atom(self):
        token = self._next()
        if token.typ == Token.number:
            return self._number(token)
        if token.typ == Token.identifier:
            return self._identifier(token)
        if token.typ == Token.operator and token.text == '(':
            inner = self._expr()
            self._expect(')')
            return inner
        if token.typ == Token.operator and token.text == '-':
            return -self._atom()
        if token.typ == Token.eof:
            raise ParseError("unexpected end of input", token.position)
        raise ParseError("unexpected %r" % (token.text,), token.position)

    def _number(self, token):
        numerator = int(token.text)
        # int '/' int is a single literal, taken before any '^'
        if (self._peek().typ == Token.operator and self._peek().text == '/'
                and self.tokens[self.index + 1].typ == Token.number):
            slash = self._next()
            denominator = int(self._next().text)
            if denominator == 0:
                raise ParseError("zero denominator literal", slash.position)
            return Expression.constant('%d/%d' % (numerator, denominator))
        return Expression.constant(numerator)

    def _identifier(self, token):
        name = token.text
        if name in COORDINATES:
            return Expression.coordinate(name)
        if name == 'i':
            return I
        if name == 'beta' and self.radical is not None:
            return self.radical.beta()
        raise ParseError("unknown identifier %r" % (name,), token.position)


def parse_expression(text, radical=None):
    """
    Parse expression text into a canonical Expression.

    Args:
        text: expression string
        radical: Radical handle; enables the identifier 'beta'

    Returns:
        Expression

    Examples:
        >>> str(parse_expression('2*x*(x^2+y^2)'))
        '2*x^3+2*x*y^2'
    """
    return ExpressionParser(text, radical).parse()


# Printer

def _format_coefficient(coeff):
    """Return (negative, magnitude) for a Gaussian rational coefficient."""
    real, imag = QQ.to_sympy(coeff.x), QQ.to_sympy(coeff.y)
    if imag == 0:
        return real < 0, str(abs(real))
    if real == 0:
        magnitude = 'i' if abs(imag) == 1 else '%s*i' % (abs(imag),)
        return imag < 0, magnitude
    imag_text = 'i' if abs(imag) == 1 else '%s*i' % (abs(imag),)
    return False, '(%s%s%s)' % (real, '-' if imag < 0 else '+', imag_text)


def _format_monomial(monom):
    factors = []
    for name, power in zip(COORDINATES, monom):
        if power == 1:
            factors.append(name)
        elif power > 1:
            factors.append('%s^%d' % (name, power))
    return '*'.join(factors)


def _format_poly(poly):
    if not poly:
        return '0'
    pieces = []
    for position, (monom, coeff) in enumerate(poly.terms()):
        negative, magnitude = _format_coefficient(coeff)
        monomial = _format_monomial(monom)
        if not monomial:
            body = magnitude
        elif magnitude == '1':
            body = monomial
            # "-x^2" would read as (-x)^2
            if negative and position == 0 and '^' in monomial.split('*')[0]:
                body = '1*' + monomial
        else:
            body = magnitude + '*' + monomial
        if negative:
            pieces.append('-' + body)
        elif position:
            pieces.append('+' + body)
        else:
            pieces.append(body)
    return ''.join(pieces)


def _format_frac(frac):
    numer, denom = frac.numer, frac.denom
    if denom.is_ground:
        return _format_poly(numer.mul_ground(QQ_I.one / denom.LC))
    return '(%s)/(%s)' % (_format_poly(numer), _format_poly(denom))


def format_expression(e):
    """
    Canonical text of an Expression in the parser grammar.

    Args:
        e: Expression

    Returns:
        str
    """
    if e.radical is None:
        return _format_frac(e.rational)
    beta_text = '(%s)*beta' % (_format_frac(e.radical_part),)
    if not e.rational:
        return beta_text
    return '%s+%s' % (_format_frac(e.rational), beta_text)


def to_text(e):
    return format_expression(e)
