"""
Stage 2: normalize b, c, f.

    sigma_2 = F0 tau_1 + sigma_1,  rho_2 = rho_1 + C0 sigma_1,
    zeta_2 = zeta_1 + B0 rho_1

After this step sigma_2 is real.
"""

import sys
import os
import logging

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from errors import PinnedSlotError
from symexpr import I, Expression
from stages.stage_utils import coframe_from_slots, radical_factors

log = logging.getLogger(__name__)

_Q = Expression.constant


def normalizations_from_scalars(A, B, G, K, LB, LbarB, radical):
    """
    B0, C0, F0 from the fundamental scalars.

    Args:
        A, B, G, K: fundamental and torsion functions
        LB, LbarB: L(B) and Lbar(B)
        radical: Radical for B^(1/2)

    Returns:
        tuple: (B0, C0, F0)
    """
    beta, inv_beta, inv_beta3 = radical_factors(radical)

    B0 = (I * _Q('3/10') * LbarB * inv_beta3
          - I * _Q('1/5') * A * inv_beta
          - I * _Q('1/10') * K * inv_beta
          - I * _Q('1/10') * LB * inv_beta)

    C0 = (_Q('11/20') * LB * inv_beta
          + _Q('3/20') * beta * G
          + _Q('1/20') * LbarB * inv_beta3
          - _Q('1/5') * A * inv_beta
          + _Q('3/20') * K * inv_beta)

    F0 = (_Q('1/10') * LB / B
          + _Q('3/10') * beta * G
          + _Q('1/10') * LbarB * inv_beta3
          - _Q('2/5') * A * inv_beta
          + _Q('3/10') * K * inv_beta)

    return B0, C0, F0


def check_stage2(omega2):
    """True if sigma_2 is real."""
    sigma = omega2['sigma']
    return (sigma.conjugate() - sigma).is_zero()


def stage2(inputs, omega1):
    """
    Normalizations B0, C0, F0 and the coframe omega_2.

    Args:
        inputs: CascadeInputs
        omega1: Coframe from stage 1

    Returns:
        tuple: (B0, C0, F0, omega_2)
    """
    B0, C0, F0 = normalizations_from_scalars(
        inputs.A, inputs.B, inputs.G, inputs.K, inputs.LB, inputs.LbarB, inputs.radical)

    tau1, sigma1, rho1, zeta1 = (omega1['tau'], omega1['sigma'],
                                 omega1['rho'], omega1['zeta'])
    omega2 = coframe_from_slots(
        tau1,
        tau1.scale(F0) + sigma1,
        rho1 + sigma1.scale(C0),
        zeta1 + rho1.scale(B0),
    )
    if not check_stage2(omega2):
        raise PinnedSlotError('conj(sigma_2) - sigma_2',
                              omega2['sigma'].conjugate() - omega2['sigma'])
    log.debug("stage 2: B0=%s C0=%s F0=%s", B0, C0, F0)
    return B0, C0, F0, omega2
