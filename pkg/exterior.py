"""
Exterior calculus on the five-dimensional chart (x, y, u1, u2, u3).

Vector fields and 1-forms carry one Expression per coordinate; 2-forms
carry one per ordered pair a < b, so dc ^ dc cannot even be represented.

Conventions:
- X(f) = sum_c X_c * df/dc
- [X, Y]_c = X(Y_c) - Y(X_c)
- dw(X, Y) = X(w(Y)) - Y(w(X)) - w([X, Y])
  so for a frame with dual coframe, T^k_jl = dw^k(X_j, X_l) = -w^k([X_j, X_l])
"""

import sys
import os
import logging
import random
from itertools import combinations

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

import sympy

from errors import BranchError, PoleError, SingularMatrixError
from linalg import determinant, inverse_matrix, row_rank, transpose
from symexpr import (
    COORDINATES,
    ZERO,
    Expression,
    Point,
    conjugate,
    differentiate,
    evaluate,
)

log = logging.getLogger(__name__)

DIMENSION = len(COORDINATES)
PAIRS = tuple(combinations(range(DIMENSION), 2))

# Random rational points tried before the exact elimination
RANK_SAMPLE_POINTS = 3
RANK_SAMPLE_SEED = 20130514


def _as_expression(value):
    if isinstance(value, Expression):
        return value
    return Expression.constant(value)


def _index(coordinate):
    if isinstance(coordinate, int):
        return coordinate
    return COORDINATES.index(coordinate)


class VectorField(object):
    """Complex vector field sum_c X_c d/dc."""

    __slots__ = ('coefficients',)

    def __init__(self, coefficients):
        coefficients = tuple(_as_expression(c) for c in coefficients)
        if len(coefficients) != DIMENSION:
            raise ValueError("a vector field needs %d coefficients" % DIMENSION)
        self.coefficients = coefficients

    @classmethod
    def coordinate(cls, name):
        """The coordinate field d/d(name)."""
        index = _index(name)
        return cls([1 if c == index else 0 for c in range(DIMENSION)])

    @classmethod
    def zero(cls):
        return cls([ZERO] * DIMENSION)

    def __getitem__(self, coordinate):
        return self.coefficients[_index(coordinate)]

    def __iter__(self):
        return iter(self.coefficients)

    def __add__(self, other):
        return VectorField([a + b for a, b in zip(self, other)])

    def __sub__(self, other):
        return VectorField([a - b for a, b in zip(self, other)])

    def __neg__(self):
        return VectorField([-a for a in self])

    def scale(self, factor):
        factor = _as_expression(factor)
        return VectorField([factor * a for a in self])

    __rmul__ = scale

    def conjugate(self):
        return VectorField([conjugate(a) for a in self])

    def is_zero(self):
        return all(a.is_zero() for a in self)

    def __call__(self, f):
        return apply(self, f)

    def __eq__(self, other):
        return isinstance(other, VectorField) and self.coefficients == other.coefficients

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(('vector', self.coefficients))

    def __repr__(self):
        terms = ['(%s)*d%s' % (a, c) for a, c in zip(self, COORDINATES) if not a.is_zero()]
        return 'VectorField(%s)' % (' + '.join(terms) or '0',)


class OneForm(object):
    """1-form sum_c w_c dc."""

    __slots__ = ('coefficients',)

    def __init__(self, coefficients):
        coefficients = tuple(_as_expression(c) for c in coefficients)
        if len(coefficients) != DIMENSION:
            raise ValueError("a 1-form needs %d coefficients" % DIMENSION)
        self.coefficients = coefficients

    @classmethod
    def coordinate(cls, name):
        """The coordinate differential d(name)."""
        index = _index(name)
        return cls([1 if c == index else 0 for c in range(DIMENSION)])

    @classmethod
    def zero(cls):
        return cls([ZERO] * DIMENSION)

    def __getitem__(self, coordinate):
        return self.coefficients[_index(coordinate)]

    def __iter__(self):
        return iter(self.coefficients)

    def __add__(self, other):
        return OneForm([a + b for a, b in zip(self, other)])

    def __sub__(self, other):
        return OneForm([a - b for a, b in zip(self, other)])

    def __neg__(self):
        return OneForm([-a for a in self])

    def scale(self, factor):
        factor = _as_expression(factor)
        return OneForm([factor * a for a in self])

    __rmul__ = scale

    def conjugate(self):
        return OneForm([conjugate(a) for a in self])

    def is_zero(self):
        return all(a.is_zero() for a in self)

    def __call__(self, field):
        """Pairing w(X)."""
        total = ZERO
        for a, b in zip(self, field):
            if not a.is_zero() and not b.is_zero():
                total = total + a * b
        return total

    def __eq__(self, other):
        return isinstance(other, OneForm) and self.coefficients == other.coefficients

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(('form', self.coefficients))

    def __repr__(self):
        terms = ['(%s)*d%s' % (a, c) for a, c in zip(self, COORDINATES) if not a.is_zero()]
        return 'OneForm(%s)' % (' + '.join(terms) or '0',)


class TwoForm(object):
    """2-form sum_{a<b} W_ab dc_a ^ dc_b; zero coefficients are not stored."""

    __slots__ = ('coefficients',)

    def __init__(self, coefficients=None):
        stored = {}
        for (a, b), value in (coefficients or {}).items():
            a, b = _index(a), _index(b)
            value = _as_expression(value)
            if a == b:
                continue
            if a > b:
                a, b, value = b, a, -value
            total = stored.get((a, b), ZERO) + value
            if total.is_zero():
                stored.pop((a, b), None)
            else:
                stored[(a, b)] = total
        self.coefficients = stored

    def coefficient(self, a, b):
        """Coefficient W_ab with antisymmetry applied."""
        a, b = _index(a), _index(b)
        if a == b:
            return ZERO
        if a < b:
            return self.coefficients.get((a, b), ZERO)
        return -self.coefficients.get((b, a), ZERO)

    def __add__(self, other):
        merged = dict(self.coefficients)
        for pair, value in other.coefficients.items():
            merged[pair] = merged.get(pair, ZERO) + value
        return TwoForm(merged)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TwoForm(dict((pair, -value) for pair, value in self.coefficients.items()))

    def scale(self, factor):
        factor = _as_expression(factor)
        return TwoForm(dict((pair, factor * value) for pair, value in self.coefficients.items()))

    __rmul__ = scale

    def conjugate(self):
        return TwoForm(dict((pair, conjugate(value)) for pair, value in self.coefficients.items()))

    def is_zero(self):
        return not self.coefficients

    def __call__(self, first, second):
        """W(X, Y) = sum_{a<b} W_ab (X_a Y_b - X_b Y_a)."""
        total = ZERO
        for (a, b), value in self.coefficients.items():
            minor = first[a] * second[b] - first[b] * second[a]
            if not minor.is_zero():
                total = total + value * minor
        return total

    def __eq__(self, other):
        return isinstance(other, TwoForm) and self.coefficients == other.coefficients

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        terms = ['(%s)*d%s^d%s' % (value, COORDINATES[a], COORDINATES[b])
                 for (a, b), value in sorted(self.coefficients.items())]
        return 'TwoForm(%s)' % (' + '.join(terms) or '0',)


class Frame(object):
    """Ordered five vector fields with slot names."""

    def __init__(self, fields, names):
        fields, names = tuple(fields), tuple(names)
        if len(fields) != DIMENSION or len(names) != DIMENSION:
            raise ValueError("a frame needs %d fields and names" % DIMENSION)
        self.fields = fields
        self.names = names

    def __getitem__(self, name):
        return self.fields[self.names.index(name)]

    def __iter__(self):
        return iter(self.fields)

    def matrix(self):
        """Rows are fields, columns are coordinates."""
        return [list(field.coefficients) for field in self.fields]

    def determinant(self):
        return determinant(self.matrix())

    def is_valid(self):
        return not self.determinant().is_zero()


class Coframe(object):
    """Ordered five 1-forms with slot names."""

    def __init__(self, forms, names):
        forms, names = tuple(forms), tuple(names)
        if len(forms) != DIMENSION or len(names) != DIMENSION:
            raise ValueError("a coframe needs %d forms and names" % DIMENSION)
        self.forms = forms
        self.names = names

    def __getitem__(self, name):
        return self.forms[self.names.index(name)]

    def __iter__(self):
        return iter(self.forms)

    def matrix(self):
        return [list(form.coefficients) for form in self.forms]

    def replace(self, **slots):
        """Copy with some slots replaced by name."""
        forms = [slots.pop(name, form) for name, form in zip(self.names, self.forms)]
        if slots:
            raise KeyError("unknown coframe slots: %s" % ', '.join(sorted(slots)))
        return Coframe(forms, self.names)


class StructureTable(object):
    """
    Coefficients T^k_jl of dw^k = sum_{j<l} T^k_jl w^j ^ w^l, keyed by slot names.
    """

    def __init__(self, names, coefficients):
        self.names = tuple(names)
        self.coefficients = coefficients

    def coefficient(self, k, j, l):
        """T^k_jl for any order of j, l."""
        if j == l:
            return ZERO
        position = self.names.index
        if position(j) > position(l):
            return -self.coefficients[k][(l, j)]
        return self.coefficients[k][(j, l)]

    def slot(self, k):
        """All pairs of dw^k, in slot order."""
        return [((j, l), self.coefficients[k][(j, l)]) for j, l in combinations(self.names, 2)]

    def is_closed(self, k):
        return all(value.is_zero() for _, value in self.slot(k))

    def nonzero_slots(self):
        return [(k, pair, value)
                for k in self.names
                for pair, value in self.slot(k)
                if not value.is_zero()]

    def reconstruct(self, coframe):
        """dw^k rebuilt from the table as coordinate 2-forms."""
        result = []
        for k in self.names:
            total = TwoForm()
            for (j, l), value in self.slot(k):
                if not value.is_zero():
                    total = total + wedge(coframe[j], coframe[l]).scale(value)
            result.append(total)
        return result


class RankReport(object):
    """Generic rank of a list of fields, with the evidence used."""

    def __init__(self, size, generic_rank, sample_ranks, certified_symbolically,
                 point=None, point_rank=None):
        self.size = size
        self.generic_rank = generic_rank
        self.sample_ranks = sample_ranks
        self.certified_symbolically = certified_symbolically
        self.point = point
        self.point_rank = point_rank

    def to_dict(self):
        result = {
            'size': self.size,
            'generic_rank': self.generic_rank,
            'sample_ranks': list(self.sample_ranks),
            'certified_symbolically': self.certified_symbolically,
        }
        if self.point is not None:
            result['point'] = self.point.as_strings()
            result['point_rank'] = self.point_rank
        return result

    def __repr__(self):
        return 'RankReport(generic_rank=%d, size=%d)' % (self.generic_rank, self.size)


# Operations

def apply(field, f):
    """
    Apply a vector field to a scalar.

    Args:
        field: VectorField
        f: Expression

    Returns:
        Expression: sum_c X_c * df/dc
    """
    f = _as_expression(f)
    total = ZERO
    for coefficient, name in zip(field, COORDINATES):
        if coefficient.is_zero():
            continue
        partial = differentiate(f, name)
        if not partial.is_zero():
            total = total + coefficient * partial
    return total


def lie_bracket(first, second):
    """
    Lie bracket [X, Y].

    Args:
        first: VectorField X
        second: VectorField Y

    Returns:
        VectorField with coefficients X(Y_c) - Y(X_c)
    """
    return VectorField([apply(first, b) - apply(second, a) for a, b in zip(first, second)])


def differential(f):
    """df as a OneForm."""
    f = _as_expression(f)
    return OneForm([differentiate(f, name) for name in COORDINATES])


def exterior_derivative(form):
    """
    d of a 1-form: d(sum f_c dc) = sum_{a<b} (d_a f_b - d_b f_a) dc_a ^ dc_b.

    Args:
        form: OneForm

    Returns:
        TwoForm
    """
    coefficients = {}
    for a, b in PAIRS:
        value = (differentiate(form[b], COORDINATES[a])
                 - differentiate(form[a], COORDINATES[b]))
        if not value.is_zero():
            coefficients[(a, b)] = value
    return TwoForm(coefficients)


def wedge(first, second):
    """w ^ eta for two 1-forms."""
    coefficients = {}
    for a, b in PAIRS:
        value = first[a] * second[b] - first[b] * second[a]
        if not value.is_zero():
            coefficients[(a, b)] = value
    return TwoForm(coefficients)


def contract(field, two_form):
    """
    Interior product X -| W, the 1-form Y -> W(X, Y).

    Args:
        field: VectorField
        two_form: TwoForm

    Returns:
        OneForm
    """
    coefficients = [ZERO] * DIMENSION
    for (a, b), value in two_form.coefficients.items():
        coefficients[b] = coefficients[b] + field[a] * value
        coefficients[a] = coefficients[a] - field[b] * value
    return OneForm(coefficients)


def dual_coframe(frame, names=None):
    """
    Coframe w with w^k(X_j) = delta_kj.

    Args:
        frame: Frame
        names: slot names of the result (defaults to the frame's names)

    Returns:
        Coframe

    Raises:
        SingularMatrixError: the frame's determinant is identically 0
    """
    try:
        inverse = inverse_matrix(transpose(frame.matrix()))
    except SingularMatrixError as error:
        raise SingularMatrixError("singular frame (%s): determinant vanishes identically"
                                  % ', '.join(frame.names), residual=error.residual)
    return Coframe([OneForm(row) for row in inverse], names or frame.names)


def dual_frame(coframe, names=None):
    """Frame X with w^k(X_j) = delta_kj."""
    try:
        inverse = inverse_matrix(coframe.matrix())
    except SingularMatrixError as error:
        raise SingularMatrixError("singular coframe (%s): determinant vanishes identically"
                                  % ', '.join(coframe.names), residual=error.residual)
    return Frame([VectorField(column) for column in transpose(inverse)], names or coframe.names)


def structure_coefficients(coframe):
    """
    Structure table of a coframe.

    Args:
        coframe: Coframe

    Returns:
        StructureTable with T^k_jl = dw^k(X_j, X_l) on the dual frame X
    """
    frame = dual_frame(coframe)
    coefficients = {}
    for name, form in zip(coframe.names, coframe.forms):
        d_form = exterior_derivative(form)
        slot = {}
        for j, l in combinations(range(DIMENSION), 2):
            slot[(coframe.names[j], coframe.names[l])] = d_form(frame.fields[j], frame.fields[l])
        coefficients[name] = slot
    log.debug("structure table computed for coframe %s", ', '.join(coframe.names))
    return StructureTable(coframe.names, coefficients)


def _numeric_rank(matrix, point, branch):
    values = [[evaluate(entry, point, branch) for entry in row] for row in matrix]
    return sympy.Matrix(values).rank()


def _random_point(rng):
    return Point([sympy.Rational(rng.randint(-9, 9), rng.randint(1, 5)) for _ in COORDINATES])


def generic_rank(fields, point=None, branch=1):
    """
    Generic rank of a list of vector fields.

    Random rational points give a lower bound; when that bound is below
    the number of fields, exact elimination over the rational function field
    decides it.

    Args:
        fields: list of 1 to 5 VectorFields
        point: optional Point for an additional pointwise rank
        branch: sign of beta used when evaluating at points

    Returns:
        RankReport
    """
    if not 1 <= len(fields) <= DIMENSION:
        raise ValueError("generic_rank takes between 1 and %d fields" % DIMENSION)
    matrix = [list(field.coefficients) for field in fields]

    rng = random.Random(RANK_SAMPLE_SEED)
    sample_ranks = []
    for _ in range(RANK_SAMPLE_POINTS):
        sample = _random_point(rng)
        try:
            sample_ranks.append(_numeric_rank(matrix, sample, branch))
        except (PoleError, BranchError):
            log.warning("rank sample at %s skipped", sample)

    lower = max(sample_ranks) if sample_ranks else 0
    if lower == len(fields):
        rank, certified = lower, False
    else:
        rank, certified = row_rank(matrix), True

    point_rank = None
    if point is not None:
        point_rank = _numeric_rank(matrix, point, branch)

    return RankReport(len(fields), rank, sample_ranks, certified, point, point_rank)
