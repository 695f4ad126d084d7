"""
CR geometry of a graphed five-dimensional manifold.

    v_j = phi_j(x, y, u1, u2, u3),   j = 1, 2, 3,   z = x + i*y

Flow:
1. cr_generator: solve the tangency system for L = d/dz + sum A^j d/du_j
2. derived_frame: T = i[L, Lbar], S = [L, T], R = [L, S]
3. classify: rank pattern 3, 4, 4, 5 of the iterated brackets
4. fundamentals: Sbar = A T + B S and [L, R] = E T + F S + G R
5. omega0 / torsion_table: dual coframe of (R, S, T, L, Lbar) and its
   structure equations, with every slot fixed by the bracket relations checked
"""

import sys
import os
import logging

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from errors import (
    ExpressionError,
    InconsistentSystemError,
    PinnedSlotError,
    TangencyError,
)
from exterior import (
    Frame,
    VectorField,
    apply,
    dual_coframe,
    generic_rank,
    lie_bracket,
    structure_coefficients,
)
from linalg import determinant, inverse_matrix, solve_linear
from symexpr import (
    I,
    ONE,
    ZERO,
    Expression,
    conjugate,
    differentiate,
    is_real,
)

log = logging.getLogger(__name__)

FRAME_NAMES = ('R', 'S', 'T', 'L', 'Lbar')
SLOT_NAMES = ('tau', 'sigma', 'rho', 'zeta', 'zetabar')

# Named torsion functions: name -> (slot, pair)
TORSION_SLOTS = {
    'T': ('tau', ('tau', 'sigma')),
    'Q': ('tau', ('tau', 'rho')),
    'K': ('tau', ('tau', 'zetabar')),
    'N': ('tau', ('sigma', 'rho')),
    'S': ('sigma', ('tau', 'sigma')),
    'P': ('sigma', ('tau', 'rho')),
    'J': ('sigma', ('tau', 'zetabar')),
    'M': ('sigma', ('sigma', 'rho')),
    'R': ('rho', ('tau', 'sigma')),
    'O': ('rho', ('tau', 'rho')),
    'H': ('rho', ('tau', 'zetabar')),
    'L': ('rho', ('sigma', 'rho')),
}

CONDITIONS = (
    'rank(L,Lbar,T)=3',
    'rank(L,Lbar,T,S)=4',
    'rank(L,Lbar,T,S,Sbar)=4',
    'rank(L,Lbar,T,S,R)=5',
)


class GraphedManifold(object):
    """
    Real graph v_j = phi_j over the chart, with an optional base point.
    """

    def __init__(self, name, phi, base_point=None):
        phi = tuple(phi)
        if len(phi) != 3:
            raise ExpressionError("a graph needs exactly three functions phi_1, phi_2, phi_3")
        for index, function in enumerate(phi):
            if not is_real(function):
                raise ExpressionError("phi_%d is not real" % (index + 1),
                                      residual=conjugate(function) - function)
        self.name = name
        self.phi = phi
        self.base_point = base_point

    def __repr__(self):
        return 'GraphedManifold(%r)' % (self.name,)


class CRGenerator(object):
    """L = d/dz + A^1 d/du1 + A^2 d/du2 + A^3 d/du3 over the real basis."""

    def __init__(self, coefficients):
        self.coefficients = tuple(coefficients)
        half = Expression.constant('1/2')
        self.field = VectorField([half, -I * half] + list(self.coefficients))


class CRFrame(object):
    """The fields L, Lbar, T, S, R."""

    def __init__(self, L, Lbar, T, S, R):
        self.L = L
        self.Lbar = Lbar
        self.T = T
        self.S = S
        self.R = R

    def as_frame(self):
        """Frame ordered (R, S, T, L, Lbar), dual to (tau, sigma, rho, zeta, zetabar)."""
        return Frame((self.R, self.S, self.T, self.L, self.Lbar), FRAME_NAMES)


class Fundamentals(object):
    """A, B with Sbar = A T + B S and E, F, G with [L, R] = E T + F S + G R."""

    def __init__(self, A, B, E, F, G):
        self.A = A
        self.B = B
        self.E = E
        self.F = F
        self.G = G

    def as_dict(self):
        return {'A': self.A, 'B': self.B, 'E': self.E, 'F': self.F, 'G': self.G}


class TorsionTable(object):
    """
    Structure table of omega_0 with the twelve named torsion functions.
    """

    def __init__(self, coframe, table, pinned):
        self.coframe = coframe
        self.table = table
        self.pinned = pinned
        self.named = dict((name, table.coefficient(slot, pair[0], pair[1]))
                          for name, (slot, pair) in TORSION_SLOTS.items())

    def __getitem__(self, name):
        return self.named[name]

    def coefficient(self, k, j, l):
        return self.table.coefficient(k, j, l)


class ConditionVerdict(object):

    def __init__(self, name, expected, rank_report):
        self.name = name
        self.expected = expected
        self.rank = rank_report.generic_rank
        self.rank_report = rank_report
        self.passed = self.rank == expected

    def to_dict(self):
        result = {'condition': self.name, 'expected': self.expected,
                  'rank': self.rank, 'passed': self.passed}
        if self.rank_report.point is not None:
            result['point_rank'] = self.rank_report.point_rank
        return result


class ClassReport(object):
    """Rank verdicts for general class III_2 membership."""

    def __init__(self, name, verdicts, degeneracy_determinant_zero):
        self.name = name
        self.verdicts = verdicts
        self.degeneracy_determinant_zero = degeneracy_determinant_zero
        self.member = all(v.passed for v in verdicts) and degeneracy_determinant_zero
        self.first_failure = next((v.name for v in verdicts if not v.passed), None)
        if self.first_failure is None and not degeneracy_determinant_zero:
            self.first_failure = CONDITIONS[2]

    @property
    def ranks(self):
        return tuple(v.rank for v in self.verdicts)

    def to_dict(self):
        return {
            'manifold': self.name,
            'member': self.member,
            'ranks': list(self.ranks),
            'conditions': [v.to_dict() for v in self.verdicts],
            'degeneracy_determinant_zero': self.degeneracy_determinant_zero,
            'first_failure': self.first_failure,
        }


# Operations

def cr_generator(manifold):
    """
    Unique CR generator tangent to the graph.

    Solves (Id - i Phi_u) A = i phi_z with Phi_u[j][k] = d phi_j / d u_k and
    phi_z = (d/dx - i d/dy) phi / 2, then checks L(u_j - i phi_j) = 0.

    Args:
        manifold: GraphedManifold

    Returns:
        CRGenerator

    Raises:
        SingularMatrixError: tangency system is singular
        TangencyError: the solution fails the tangency identity
    """
    phi = manifold.phi
    u_names = ('u1', 'u2', 'u3')
    system = [[(ONE if j == k else ZERO) - I * differentiate(phi[j], u_names[k])
               for k in range(3)] for j in range(3)]
    phi_z = [(differentiate(p, 'x') - I * differentiate(p, 'y')) / 2 for p in phi]

    inverse = inverse_matrix(system)
    coefficients = []
    for row in inverse:
        total = ZERO
        for entry, value in zip(row, phi_z):
            total = total + entry * I * value
        coefficients.append(total)
    generator = CRGenerator(coefficients)

    for j in range(3):
        residual = apply(generator.field, Expression.coordinate(u_names[j]) - I * phi[j])
        if not residual.is_zero():
            raise TangencyError("L(u%d - i phi_%d) does not vanish" % (j + 1, j + 1), residual)
    log.debug("CR generator of %s: A = %s", manifold.name, [str(a) for a in coefficients])
    return generator


def derived_frame_from_field(L):
    """
    Iterated brackets of a (1,0) field.

    Args:
        L: VectorField

    Returns:
        CRFrame

    Raises:
        TangencyError: i[L, Lbar] is not real
    """
    Lbar = L.conjugate()
    T = lie_bracket(L, Lbar).scale(I)
    if T.conjugate() != T:
        raise TangencyError("T = i[L, Lbar] is not real")
    S = lie_bracket(L, T)
    R = lie_bracket(L, S)
    return CRFrame(L, Lbar, T, S, R)


def derived_frame(generator):
    return derived_frame_from_field(generator.field)


def classify_frame(frame, name=None, point=None):
    """
    Rank verdicts of an already derived frame.

    Args:
        frame: CRFrame
        name: label carried into the report
        point: optional Point for pointwise ranks

    Returns:
        ClassReport
    """
    L, Lbar, T, S, R = frame.L, frame.Lbar, frame.T, frame.S, frame.R
    Sbar = S.conjugate()
    families = (
        ([L, Lbar, T], 3),
        ([L, Lbar, T, S], 4),
        ([L, Lbar, T, S, Sbar], 4),
        ([L, Lbar, T, S, R], 5),
    )
    verdicts = []
    for condition, (fields, expected) in zip(CONDITIONS, families):
        verdicts.append(ConditionVerdict(condition, expected, generic_rank(fields, point)))
        log.debug("%s: rank %d", condition, verdicts[-1].rank)

    degenerate = determinant([list(f.coefficients) for f in families[2][0]]).is_zero()
    report = ClassReport(name, verdicts, degenerate)
    log.info("classified %s: member=%s ranks=%s", name, report.member, report.ranks)
    return report


def classify(manifold, point=None):
    """
    General class III_2 membership of a graphed manifold.

    Failures are verdicts in the report, never exceptions.

    Args:
        manifold: GraphedManifold
        point: optional Point (defaults to the manifold's base point)

    Returns:
        ClassReport
    """
    frame = derived_frame(cr_generator(manifold))
    return classify_frame(frame, manifold.name, point or manifold.base_point)


def fundamentals(frame):
    """
    Fundamental functions A, B, E, F, G of a class III_2 frame.

    Args:
        frame: CRFrame

    Returns:
        Fundamentals

    Raises:
        InconsistentSystemError: a decomposition or a unit relation fails
    """
    T, S, R = frame.T, frame.S, frame.R
    Sbar = S.conjugate()
    A, B = solve_linear([list(T), list(S)], list(Sbar))
    residual = Sbar - T.scale(A) - S.scale(B)
    if not residual.is_zero():
        raise InconsistentSystemError("Sbar - A T - B S does not vanish")

    LR = lie_bracket(frame.L, R)
    E, F, G = solve_linear([list(T), list(S), list(R)], list(LR))
    residual = LR - T.scale(E) - S.scale(F) - R.scale(G)
    if not residual.is_zero():
        raise InconsistentSystemError("[L, R] - E T - F S - G R does not vanish")

    unit = B * conjugate(B) - 1
    if not unit.is_zero():
        raise InconsistentSystemError("B * conj(B) - 1 does not vanish", unit)
    relation = conjugate(A) + conjugate(B) * A
    if not relation.is_zero():
        raise InconsistentSystemError("conj(A) + conj(B) * A does not vanish", relation)

    log.debug("fundamentals: A=%s B=%s E=%s F=%s G=%s", A, B, E, F, G)
    return Fundamentals(A, B, E, F, G)


def frame_brackets(frame):
    """
    Every bracket of the frame expressed in the frame (R, S, T, L, Lbar).

    Args:
        frame: CRFrame

    Returns:
        dict mapping (X, Y) name pairs to dicts of frame-coordinate Expressions
    """
    named = dict(zip(FRAME_NAMES, (frame.R, frame.S, frame.T, frame.L, frame.Lbar)))
    coframe = omega0(frame)
    result = {}
    for i, first in enumerate(FRAME_NAMES):
        for second in FRAME_NAMES[i + 1:]:
            bracket = lie_bracket(named[first], named[second])
            result[(first, second)] = dict(
                (frame_name, form(bracket)) for frame_name, form in zip(FRAME_NAMES, coframe))
    return result


def omega0(frame):
    """Coframe (tau, sigma, rho, zeta, zetabar) dual to (R, S, T, L, Lbar)."""
    return dual_coframe(frame.as_frame(), SLOT_NAMES)


def pinned_slots(frame, fun):
    """
    Slots of d(omega_0) fixed by the bracket relations.

    Returns:
        list of ((slot, j, l), expected Expression)
    """
    A, B = fun.A, fun.B
    L = frame.L
    pinned = [
        (('tau', 'sigma', 'zeta'), ONE),
        (('tau', 'sigma', 'zetabar'), B),
        (('tau', 'tau', 'zeta'), fun.G),
        (('tau', 'rho', 'zeta'), ZERO),
        (('tau', 'rho', 'zetabar'), ZERO),
        (('tau', 'zeta', 'zetabar'), ZERO),
        (('sigma', 'rho', 'zeta'), ONE),
        (('sigma', 'rho', 'zetabar'), B),
        (('sigma', 'tau', 'zeta'), fun.F),
        (('sigma', 'sigma', 'zeta'), ZERO),
        (('sigma', 'sigma', 'zetabar'), apply(L, B) + A),
        (('sigma', 'zeta', 'zetabar'), ZERO),
        (('rho', 'rho', 'zeta'), ZERO),
        (('rho', 'rho', 'zetabar'), A),
        (('rho', 'zeta', 'zetabar'), I),
        (('rho', 'tau', 'zeta'), fun.E),
        (('rho', 'sigma', 'zeta'), ZERO),
        (('rho', 'sigma', 'zetabar'), apply(L, A)),
    ]
    for slot in ('zeta', 'zetabar'):
        for i, j in enumerate(SLOT_NAMES):
            for l in SLOT_NAMES[i + 1:]:
                pinned.append(((slot, j, l), ZERO))
    return pinned


def torsion_table(frame, fun):
    """
    Structure equations of omega_0 with pinned slots verified.

    Args:
        frame: CRFrame
        fun: Fundamentals

    Returns:
        TorsionTable

    Raises:
        PinnedSlotError: a fixed slot does not hold
    """
    coframe = omega0(frame)
    table = structure_coefficients(coframe)
    pinned = pinned_slots(frame, fun)
    for (k, j, l), expected in pinned:
        residual = table.coefficient(k, j, l) - expected
        if not residual.is_zero():
            raise PinnedSlotError('d%s[%s^%s]' % (k, j, l), residual)
    log.debug("omega_0 torsion: %d pinned slots verified", len(pinned))
    return TorsionTable(coframe, table, pinned)
