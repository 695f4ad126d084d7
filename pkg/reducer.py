"""
Cartan reduction of a graphed class III_2 manifold.

Runs the full pipeline in order:
1. CR generator and derived frame (L, Lbar, T, S, R)
2. Class III_2 membership; non-members stop here with their report
3. Fundamental functions A, B, E, F, G and the torsion of omega_0
4. Stage 1: register beta = B^(1/2) and rescale to omega_1
5. Stage 2: B0, C0, F0 and omega_2
6. Stage 3: D0, G0 and omega_3
7. Stage 4: H0 and omega_4
8. Extract I1 ... I15, cross-check I1 against its closed form, audit conjugates
9. Connection axioms of the reduced equations, with omega_4 as the base coframe
"""

import sys
import os
import logging
import time

sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from crgeom import (
    classify_frame,
    cr_generator,
    derived_frame,
    fundamentals,
    torsion_table,
)
from errors import ExtractionError, RadicalError
from exterior import structure_coefficients
from model import connection_axiom_check, model_algebra, p5_template
from stages.stage1 import apply_stage1, check_stage1, stage1_coframe
from stages.stage2 import stage2
from stages.stage3 import stage3
from stages.stage4 import stage4
from stages.invariants import extract_invariants, invariant_I1_closed_form
from stages.audit import conjugation_audit
from stages.stage_utils import CascadeInputs, NormalizationSet

log = logging.getLogger(__name__)


class ReductionResult(object):
    """
    Everything the pipeline produced for one manifold.

    Fields past the class report stay None when the manifold is not a member.
    """

    def __init__(self, manifold, class_report):
        self.manifold = manifold
        self.class_report = class_report
        self.frame = None
        self.fundamentals = None
        self.torsion = None
        self.radical = None
        self.normalizations = NormalizationSet()
        self.coframes = {}
        self.table = None
        self.invariants = None
        self.lambdas = None
        self.consistency = None
        self.audit = None
        self.axioms = None
        self.I1_closed_form = None
        self.timings = {}

    @property
    def member(self):
        return self.class_report.member

    def to_dict(self, timings=False):
        """
        Report dictionary with every expression printed canonically.

        Args:
            timings: include per-step wall times

        Returns:
            dict
        """
        result = {'classification': self.class_report.to_dict()}
        if self.fundamentals is not None:
            result['fundamentals'] = dict(
                (name, str(value)) for name, value in self.fundamentals.as_dict().items())
        if self.torsion is not None:
            result['torsion'] = dict(
                (name, str(value)) for name, value in self.torsion.named.items())
        if self.radical is not None:
            result['radical'] = {'B': str(self.radical.b_expression()),
                                 'split': self.radical.is_split}
        normalizations = self.normalizations.as_dict()
        if normalizations:
            result['normalizations'] = dict(
                (name, str(value)) for name, value in normalizations.items())
        if self.invariants is not None:
            result['invariants'] = self.invariants.to_dict()
            result['lambda'] = self.lambdas.to_dict()
            result['I1_closed_form'] = str(self.I1_closed_form)
            result['consistency'] = self.consistency.to_dict()
            result['audit'] = self.audit.to_dict()
            result['connection_axioms'] = self.axioms.to_dict()
        if timings:
            result['timings'] = dict(self.timings)
        return result


class CartanReducer(object):
    """
    Ordered dispatch through the reduction stages.
    """

    def __init__(self, point=None):
        """
        Args:
            point: optional Point for pointwise ranks during classification
        """
        self.point = point

    def reduce(self, manifold):
        """
        Reduce a graphed manifold to its invariants.

        Args:
            manifold: GraphedManifold

        Returns:
            ReductionResult

        Raises:
            CartanError: any contract violation along the way
        """
        clock = _Clock()

        # Step 1-2: frame and classification
        frame = derived_frame(cr_generator(manifold))
        clock.lap('frame')
        report = classify_frame(frame, manifold.name, self.point or manifold.base_point)
        clock.lap('classify')
        result = ReductionResult(manifold, report)
        result.frame = frame
        if not report.member:
            log.info("%s is not in class III_2 (%s); stopping", manifold.name, report.first_failure)
            result.timings = clock.laps
            return result

        # Step 3: fundamentals and omega_0
        fun = fundamentals(frame)
        torsion = torsion_table(frame, fun)
        result.fundamentals = fun
        result.torsion = torsion
        result.coframes['omega0'] = torsion.coframe
        clock.lap('fundamentals')

        # Step 4: stage 1
        if not check_stage1(fun):
            raise RadicalError("B * conj(B) - 1 does not vanish")
        radical = apply_stage1(fun)
        result.radical = radical
        omega1 = stage1_coframe(torsion.coframe, radical)
        result.coframes['omega1'] = omega1
        inputs = CascadeInputs(frame, fun, torsion, radical)
        clock.lap('stage1')

        # Step 5-7: stages 2, 3, 4
        norms = result.normalizations
        norms.B0, norms.C0, norms.F0, omega2 = stage2(inputs, omega1)
        result.coframes['omega2'] = omega2
        clock.lap('stage2')

        norms.D0, norms.G0, omega3 = stage3(inputs, norms, omega2)
        result.coframes['omega3'] = omega3
        clock.lap('stage3')

        norms.H0, omega4 = stage4(inputs, norms, omega3)
        result.coframes['omega4'] = omega4
        clock.lap('stage4')

        # Step 8: invariants
        table = structure_coefficients(omega4)
        invariants, lambdas, consistency = extract_invariants(omega4, table)
        closed = invariant_I1_closed_form(inputs)
        residual = invariants['I1'] - closed
        consistency.add('I1 = closed form', residual)
        if not residual.is_zero():
            raise ExtractionError("extracted I1 differs from its closed form", consistency)
        result.table = table
        result.invariants = invariants
        result.lambdas = lambdas
        result.consistency = consistency
        result.I1_closed_form = closed
        result.audit = conjugation_audit(omega4, invariants, table)
        clock.lap('invariants')

        # Step 9: the reduced equations define a Cartan connection
        result.axioms = connection_axiom_check(p5_template(invariants), model_algebra(), omega4)
        if not result.axioms.passed:
            log.warning("%s: connection axioms fail: %s", manifold.name, result.axioms.failures)
        clock.lap('axioms')

        result.timings = clock.laps
        log.info("%s reduced: invariants all zero = %s", manifold.name, invariants.all_zero())
        return result


class _Clock(object):

    def __init__(self):
        self.laps = {}
        self._last = time.perf_counter()

    def lap(self, name):
        now = time.perf_counter()
        self.laps[name] = round(now - self._last, 6)
        self._last = now


# Convenience function
def reduce_manifold(manifold, point=None):
    """
    Run the full reduction on a manifold.

    Args:
        manifold: GraphedManifold
        point: optional Point for pointwise ranks

    Returns:
        ReductionResult

    Examples:
        >>> from model import model_manifold
        >>> reduce_manifold(model_manifold()).invariants.all_zero()
        True
    """
    reducer = CartanReducer(point)
    return reducer.reduce(manifold)
