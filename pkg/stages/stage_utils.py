"""
Shared helpers for the cascade stages.

The normalization formulas read a handful of scalars built from the
fundamental functions and the torsion of omega_0. CascadeInputs collects
them once so every stage sees the same values.
"""

import sys
import os

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from crgeom import SLOT_NAMES
from exterior import Coframe, apply


def radical_factors(radical):
    """
    Powers of beta = B^(1/2) used by the formulas.

    Args:
        radical: Radical

    Returns:
        tuple: (beta, 1/beta, 1/B^(3/2))
    """
    beta = radical.beta()
    inverse_beta = beta.inverse()
    inverse_beta_cubed = (radical.b_expression() * beta).inverse()
    return beta, inverse_beta, inverse_beta_cubed


def coframe_from_slots(tau, sigma, rho, zeta):
    """Coframe with the zetabar slot set to conj(zeta)."""
    return Coframe((tau, sigma, rho, zeta, zeta.conjugate()), SLOT_NAMES)


class CascadeInputs(object):
    """
    Scalars and derivations available to every stage.

    Attributes mirror the symbols of the formulas: A, B, E, F, G from the
    fundamentals, J, K from the torsion of omega_0, and LB, LbarB, LA for
    L(B), Lbar(B), L(A).
    """

    def __init__(self, frame, fun, torsion, radical):
        self.frame = frame
        self.radical = radical
        self.A = fun.A
        self.B = fun.B
        self.E = fun.E
        self.F = fun.F
        self.G = fun.G
        self.J = torsion['J']
        self.K = torsion['K']
        self.LB = apply(frame.L, fun.B)
        self.LbarB = apply(frame.Lbar, fun.B)
        self.LA = apply(frame.L, fun.A)

    def L(self, f):
        return apply(self.frame.L, f)

    def Lbar(self, f):
        return apply(self.frame.Lbar, f)


class NormalizationSet(object):
    """B0, C0, F0 (stage 2), D0, G0 (stage 3), H0 (stage 4)."""

    NAMES = ('B0', 'C0', 'F0', 'D0', 'G0', 'H0')

    def __init__(self):
        for name in self.NAMES:
            setattr(self, name, None)

    def as_dict(self):
        return dict((name, getattr(self, name)) for name in self.NAMES
                    if getattr(self, name) is not None)
