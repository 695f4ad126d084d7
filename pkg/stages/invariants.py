"""
Invariants of the final coframe omega_4.

On the section a = 1 the modified Maurer-Cartan form reduces to

    Lambda = -(X_tau tau + X_sigma sigma + X_rho rho + X_zeta zeta + X_zetabar zetabar)

and the structure equations of omega_4 must take the shape

    dtau   = 4 Lambda ^ tau + I1 tau ^ zeta - I1 tau ^ zetabar + 3 I1 sigma ^ rho
             + sigma ^ zeta + sigma ^ zetabar
    dsigma = 3 Lambda ^ sigma + I2 tau ^ rho + I3 tau ^ zeta + conj(I3) tau ^ zetabar
             + I4 sigma ^ rho - I1/2 sigma ^ zeta + I1/2 sigma ^ zetabar
             + rho ^ zeta + rho ^ zetabar
    drho   = 2 Lambda ^ rho + I5 tau ^ sigma + I6 tau ^ rho + I7 tau ^ zeta
             + conj(I7) tau ^ zetabar + I8 sigma ^ rho + I9 sigma ^ zeta
             + conj(I9) sigma ^ zetabar - I1/2 rho ^ zeta + I1/2 rho ^ zetabar
             + i zeta ^ zetabar
    dzeta  = Lambda ^ zeta + I10 tau ^ sigma + I11 tau ^ rho + I12 tau ^ zeta
             + I13 tau ^ zetabar + I14 sigma ^ rho + I15 sigma ^ zeta

Flow:
1. Sign audit on the three unit slots
2. Solve the X's from the slots they enter linearly
3. Read off I1 ... I15
4. Check every fixed slot and every repeated determination of an X
"""

import sys
import os
import logging

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from errors import ExtractionError
from exterior import structure_coefficients
from symexpr import I, ONE, Expression
from stages.stage_utils import radical_factors

log = logging.getLogger(__name__)

_Q = Expression.constant

INVARIANT_NAMES = tuple('I%d' % n for n in range(1, 16))
LAMBDA_NAMES = ('tau', 'sigma', 'rho', 'zeta', 'zetabar')


def closed_form_from_scalars(A, B, G, K, LB, LbarB, radical):
    """
    I1 from the fundamental scalars.

    Args:
        A, B, G, K: fundamental and torsion functions
        LB, LbarB: L(B) and Lbar(B)
        radical: Radical for B^(1/2)

    Returns:
        Expression
    """
    beta, inv_beta, inv_beta3 = radical_factors(radical)
    return (_Q('1/2') * LB / B
            + _Q('3/10') * beta * G
            - _Q('1/10') * LbarB * inv_beta3
            + _Q('2/5') * A * inv_beta
            - _Q('3/10') * K * inv_beta)


def invariant_I1_closed_form(inputs):
    """Closed form of I1 for a manifold's CascadeInputs."""
    return closed_form_from_scalars(inputs.A, inputs.B, inputs.G, inputs.K,
                                    inputs.LB, inputs.LbarB, inputs.radical)


class InvariantSet(object):
    """I1 ... I15 keyed by 'I1' ... 'I15'."""

    def __init__(self, values):
        self.values = dict(values)

    def __getitem__(self, name):
        return self.values[name]

    def items(self):
        return [(name, self.values[name]) for name in INVARIANT_NAMES]

    def all_zero(self):
        return all(value.is_zero() for value in self.values.values())

    def to_dict(self):
        return dict((name, str(value)) for name, value in self.items())


class LambdaCoefficients(object):
    """X_tau, X_sigma, X_rho, X_zeta, X_zetabar."""

    def __init__(self, values):
        self.values = dict(values)

    def __getitem__(self, name):
        return self.values[name]

    def to_dict(self):
        return dict((name, str(self.values[name])) for name in LAMBDA_NAMES)


class ConsistencyCheck(object):

    def __init__(self, name, residual):
        self.name = name
        self.residual = residual
        self.passed = residual.is_zero()

    def to_dict(self):
        return {'check': self.name, 'passed': self.passed, 'residual': str(self.residual)}


class ConsistencyReport(object):
    """Named residuals; the report passes when every residual is zero."""

    def __init__(self):
        self.checks = []

    def add(self, name, residual):
        self.checks.append(ConsistencyCheck(name, residual))

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    def failures(self):
        return [check for check in self.checks if not check.passed]

    def to_dict(self):
        return {
            'passed': self.passed,
            'checks': [check.to_dict() for check in self.checks],
        }


def sign_audit(table):
    """
    Residuals of the three unit slots that fix the wedge sign convention.

    Returns:
        ConsistencyReport
    """
    report = ConsistencyReport()
    report.add('dtau[sigma^zeta] = 1', table.coefficient('tau', 'sigma', 'zeta') - ONE)
    report.add('dsigma[rho^zeta] = 1', table.coefficient('sigma', 'rho', 'zeta') - ONE)
    report.add('drho[zeta^zetabar] = i', table.coefficient('rho', 'zeta', 'zetabar') - I)
    return report


def extract_invariants(omega4, table=None):
    """
    Invariants, Lambda coefficients and the consistency report of omega_4.

    Args:
        omega4: final Coframe
        table: its StructureTable, when already computed

    Returns:
        tuple: (InvariantSet, LambdaCoefficients, ConsistencyReport)

    Raises:
        ExtractionError: a unit slot, a fixed slot or an X determination fails
    """
    if table is None:
        table = structure_coefficients(omega4)

    signs = sign_audit(table)
    if not signs.passed:
        raise ExtractionError("sign audit failed: %s" % signs.failures()[0].name, signs)

    def c(k, j, l):
        return table.coefficient(k, j, l)

    half = _Q('1/2')

    # Step 1: X's and I1 from dtau, X_tau from dsigma
    I1 = c('tau', 'sigma', 'rho') / 3
    X = {
        'tau': -c('sigma', 'tau', 'sigma') / 3,
        'sigma': c('tau', 'tau', 'sigma') / 4,
        'rho': c('tau', 'tau', 'rho') / 4,
        'zeta': (c('tau', 'tau', 'zeta') - I1) / 4,
        'zetabar': (c('tau', 'tau', 'zetabar') + I1) / 4,
    }

    # Step 2: invariants
    values = {
        'I1': I1,
        'I2': c('sigma', 'tau', 'rho'),
        'I3': c('sigma', 'tau', 'zeta'),
        'I4': c('sigma', 'sigma', 'rho') - 3 * X['rho'],
        'I5': c('rho', 'tau', 'sigma'),
        'I6': c('rho', 'tau', 'rho') + 2 * X['tau'],
        'I7': c('rho', 'tau', 'zeta'),
        'I8': c('rho', 'sigma', 'rho') + 2 * X['sigma'],
        'I9': c('rho', 'sigma', 'zeta'),
        'I10': c('zeta', 'tau', 'sigma'),
        'I11': c('zeta', 'tau', 'rho'),
        'I12': c('zeta', 'tau', 'zeta') + X['tau'],
        'I13': c('zeta', 'tau', 'zetabar'),
        'I14': c('zeta', 'sigma', 'rho'),
        'I15': c('zeta', 'sigma', 'zeta') + X['sigma'],
    }

    # Step 3: fixed slots and repeated determinations
    report = signs
    fixed = (
        ('dtau[sigma^zetabar] = 1', c('tau', 'sigma', 'zetabar') - ONE),
        ('dtau[rho^zeta] = 0', c('tau', 'rho', 'zeta')),
        ('dtau[rho^zetabar] = 0', c('tau', 'rho', 'zetabar')),
        ('dtau[zeta^zetabar] = 0', c('tau', 'zeta', 'zetabar')),
        ('dsigma[rho^zetabar] = 1', c('sigma', 'rho', 'zetabar') - ONE),
        ('dsigma[zeta^zetabar] = 0', c('sigma', 'zeta', 'zetabar')),
        ('dsigma[sigma^zeta] = 3 X_zeta - I1/2',
         c('sigma', 'sigma', 'zeta') - (3 * X['zeta'] - half * I1)),
        ('dsigma[sigma^zetabar] = 3 X_zetabar + I1/2',
         c('sigma', 'sigma', 'zetabar') - (3 * X['zetabar'] + half * I1)),
        ('drho[rho^zeta] = 2 X_zeta - I1/2',
         c('rho', 'rho', 'zeta') - (2 * X['zeta'] - half * I1)),
        ('drho[rho^zetabar] = 2 X_zetabar + I1/2',
         c('rho', 'rho', 'zetabar') - (2 * X['zetabar'] + half * I1)),
        ('dzeta[sigma^zetabar] = 0', c('zeta', 'sigma', 'zetabar')),
        ('dzeta[rho^zeta] = -X_rho', c('zeta', 'rho', 'zeta') + X['rho']),
        ('dzeta[rho^zetabar] = 0', c('zeta', 'rho', 'zetabar')),
        ('dzeta[zeta^zetabar] = X_zetabar', c('zeta', 'zeta', 'zetabar') - X['zetabar']),
    )
    for name, residual in fixed:
        report.add(name, residual)

    if not report.passed:
        failure = report.failures()[0]
        raise ExtractionError("required slot %s fails (residual %s)"
                              % (failure.name, failure.residual), report)

    log.info("invariants extracted: %d of 15 vanish",
             sum(1 for value in values.values() if value.is_zero()))
    return InvariantSet(values), LambdaCoefficients(X), report


def x_zeta_determinations(table):
    """
    The three independent values of X_zeta read from dtau, dsigma and drho.

    Returns:
        tuple of Expressions
    """
    c = table.coefficient
    I1 = c('tau', 'sigma', 'rho') / 3
    half = _Q('1/2')
    return (
        (c('tau', 'tau', 'zeta') - I1) / 4,
        (c('sigma', 'sigma', 'zeta') + half * I1) / 3,
        (c('rho', 'rho', 'zeta') + half * I1) / 2,
    )
