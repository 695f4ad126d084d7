"""
Stage 4: normalize h.

    zeta_4 = zeta_3 + H0 tau_3, the other slots unchanged
"""

import sys
import os
import logging

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from symexpr import I, Expression
from stages.stage_utils import coframe_from_slots, radical_factors

log = logging.getLogger(__name__)

_Q = Expression.constant


def normalizations_from_scalars(A, LB, LbarB, LA, B0, C0, D0, F0,
                                Lbar_B0, Lbar_D0, radical):
    """
    H0. Every term carries a factor D0 or B0.

    Args:
        A: fundamental function
        LB, LbarB, LA: L(B), Lbar(B), L(A)
        B0, C0, D0, F0: earlier normalizations
        Lbar_B0, Lbar_D0: Lbar(B0), Lbar(D0)
        radical: Radical for B^(1/2)

    Returns:
        Expression H0
    """
    beta, inv_beta, inv_beta3 = radical_factors(radical)

    return (-D0 * F0
            + C0 * D0
            - LB * inv_beta * D0
            - A * inv_beta * D0
            + Lbar_D0 * inv_beta
            + I * B0 * D0
            - I * B0 * B0 * C0
            + A * inv_beta * B0 * C0
            - LA * B0
            - Lbar_B0 * inv_beta * C0
            - _Q('1/2') * LbarB * inv_beta3 * B0 * C0)


def stage4(inputs, norms, omega3):
    """
    Normalization H0 and the coframe omega_4.

    Args:
        inputs: CascadeInputs
        norms: NormalizationSet holding B0, C0, D0, F0
        omega3: Coframe from stage 3

    Returns:
        tuple: (H0, omega_4)
    """
    H0 = normalizations_from_scalars(
        inputs.A, inputs.LB, inputs.LbarB, inputs.LA,
        norms.B0, norms.C0, norms.D0, norms.F0,
        inputs.Lbar(norms.B0), inputs.Lbar(norms.D0), inputs.radical)

    tau3 = omega3['tau']
    omega4 = coframe_from_slots(
        tau3,
        omega3['sigma'],
        omega3['rho'],
        omega3['zeta'] + tau3.scale(H0),
    )
    log.debug("stage 4: H0=%s", H0)
    return H0, omega4
