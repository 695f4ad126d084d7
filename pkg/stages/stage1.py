"""
Stage 1: rescale omega_0 by powers of B^(1/2).

    tau_1 = tau_0 / B,  sigma_1 = sigma_0 / B^(1/2),  rho_1 = rho_0,
    zeta_1 = zeta_0 / B^(1/2)

Needs |B| = 1, which is exactly what makes tau_1 real.
"""

import sys
import os
import logging

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from errors import PinnedSlotError
from symexpr import conjugate, register_radical
from stages.stage_utils import coframe_from_slots

log = logging.getLogger(__name__)


def check_stage1(fun):
    """
    Check the rescaling can be done.

    Args:
        fun: Fundamentals

    Returns:
        bool: True if B * conj(B) = 1
    """
    return (fun.B * conjugate(fun.B) - 1).is_zero()


def apply_stage1(fun):
    """Register beta = B^(1/2); RadicalError propagates."""
    radical = register_radical(fun.B)
    log.debug("stage 1: radical registered (split=%s)", radical.is_split)
    return radical


def stage1_coframe(omega0, radical):
    """
    Build omega_1.

    Args:
        omega0: Coframe (tau, sigma, rho, zeta, zetabar) of the frame
        radical: Radical for B^(1/2)

    Returns:
        Coframe omega_1
    """
    inverse_beta = radical.beta().inverse()
    tau = omega0['tau'].scale(radical.b_expression().inverse())
    sigma = omega0['sigma'].scale(inverse_beta)
    rho = omega0['rho']
    zeta = omega0['zeta'].scale(inverse_beta)

    residual = tau.conjugate() - tau
    if not residual.is_zero():
        raise PinnedSlotError('conj(tau_1) - tau_1', residual)
    return coframe_from_slots(tau, sigma, rho, zeta)
