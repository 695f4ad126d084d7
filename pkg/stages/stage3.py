"""
Stage 3: normalize d and g.

    rho_3 = rho_2 + G0 tau_2,  zeta_3 = zeta_2 + D0 sigma_2
"""

import sys
import os
import logging

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from symexpr import I, Expression
from stages.stage_utils import coframe_from_slots, radical_factors

log = logging.getLogger(__name__)

_Q = Expression.constant


def normalizations_from_scalars(A, B, F, G, J, K, LB, LbarB,
                                B0, C0, F0, Lbar_B0, L_F0, Lbar_F0, radical):
    """
    D0 and G0.

    Args:
        A, B, F, G: fundamental functions
        J, K: torsion functions of omega_0
        LB, LbarB: L(B), Lbar(B)
        B0, C0, F0: stage-2 normalizations
        Lbar_B0, L_F0, Lbar_F0: derivatives of the stage-2 normalizations
        radical: Radical for B^(1/2)

    Returns:
        tuple: (D0, G0)
    """
    beta, inv_beta, inv_beta3 = radical_factors(radical)

    D0 = (I * B0 * B0
          - A * B0 * inv_beta
          + Lbar_B0 * inv_beta
          + _Q('1/2') * LbarB * B0 * inv_beta3)

    G0 = (-_Q('1/4') * LB * inv_beta * F0
          - F0 * F0
          + _Q('1/2') * beta * G * F0
          - _Q('1/2') * beta * L_F0
          + C0 * F0
          + _Q('1/2') * F * B
          + _Q('1/4') * LbarB * inv_beta3 * F0
          + _Q('1/2') * K * inv_beta * F0
          - _Q('1/2') * Lbar_F0 * inv_beta
          + _Q('1/2') * J
          - _Q('1/2') * A * inv_beta * F0)

    return D0, G0


def stage3(inputs, norms, omega2):
    """
    Normalizations D0, G0 and the coframe omega_3.

    Args:
        inputs: CascadeInputs
        norms: NormalizationSet holding B0, C0, F0
        omega2: Coframe from stage 2

    Returns:
        tuple: (D0, G0, omega_3)
    """
    D0, G0 = normalizations_from_scalars(
        inputs.A, inputs.B, inputs.F, inputs.G, inputs.J, inputs.K,
        inputs.LB, inputs.LbarB, norms.B0, norms.C0, norms.F0,
        inputs.Lbar(norms.B0), inputs.L(norms.F0), inputs.Lbar(norms.F0),
        inputs.radical)

    tau2, sigma2, rho2, zeta2 = (omega2['tau'], omega2['sigma'],
                                 omega2['rho'], omega2['zeta'])
    # g = a^2 G0 sits on the tau slot of rho
    omega3 = coframe_from_slots(
        tau2,
        sigma2,
        rho2 + tau2.scale(G0),
        zeta2 + sigma2.scale(D0),
    )
    log.debug("stage 3: D0=%s G0=%s", D0, G0)
    return D0, G0, omega3
