"""
Conjugation audit of the final coframe.

tau, sigma, rho are real and zetabar = conj(zeta), so conjugating a
structure equation and swapping zeta with zetabar must give another
structure equation of the same coframe.
"""

import sys
import os
import logging

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from errors import AuditError
from exterior import structure_coefficients
from symexpr import ZERO, conjugate
from stages.invariants import ConsistencyReport

log = logging.getLogger(__name__)

REAL_SLOTS = ('tau', 'sigma', 'rho')

_SWAP = {'zeta': 'zetabar', 'zetabar': 'zeta'}


def _swapped(name):
    return _SWAP.get(name, name)


def _form_residual(form):
    """First nonzero coefficient of a 1-form, or the zero one."""
    for value in form:
        if not value.is_zero():
            return value
    return form[0]


def conjugation_audit(omega4, invariants, table=None):
    """
    Check the conjugate pairs of the structure equations.

    Args:
        omega4: final Coframe
        invariants: InvariantSet from extract_invariants
        table: StructureTable of omega4, when already computed

    Returns:
        ConsistencyReport

    Raises:
        AuditError: any pair disagrees
    """
    report = ConsistencyReport()

    # Step 1: reality of the coframe itself
    for name in REAL_SLOTS:
        form = omega4[name]
        report.add('%s real' % name, _form_residual(form.conjugate() - form))
    zeta, zetabar = omega4['zeta'], omega4['zetabar']
    report.add('zetabar = conj(zeta)', _form_residual(zetabar - zeta.conjugate()))
    if not report.passed:
        raise AuditError("coframe fails reality: %s" % report.failures()[0].name, report)

    if table is None:
        table = structure_coefficients(omega4)
    c = table.coefficient

    # Step 2: the displayed conjugate pairs
    report.add('dsigma[tau^zetabar] = conj(I3)',
               c('sigma', 'tau', 'zetabar') - conjugate(invariants['I3']))
    report.add('drho[tau^zetabar] = conj(I7)',
               c('rho', 'tau', 'zetabar') - conjugate(invariants['I7']))
    report.add('drho[sigma^zetabar] = conj(I9)',
               c('rho', 'sigma', 'zetabar') - conjugate(invariants['I9']))

    # Step 3: every slot against its conjugate
    names = table.names
    for k in names:
        residual = ZERO
        for position, j in enumerate(names):
            for l in names[position + 1:]:
                difference = (c(_swapped(k), _swapped(j), _swapped(l))
                              - conjugate(c(k, j, l)))
                if residual.is_zero() and not difference.is_zero():
                    residual = difference
        report.add('conj(d%s) = d%s with zeta, zetabar swapped' % (k, _swapped(k)), residual)

    if not report.passed:
        raise AuditError("conjugation audit failed: %s" % report.failures()[0].name, report)
    log.debug("conjugation audit: %d checks passed", len(report.checks))
    return report
