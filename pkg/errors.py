"""
Exception hierarchy shared by the reduction engine.

Verdicts (classification, Jacobi sums, axiom checks) are reported as data.
Exceptions are reserved for contract violations: the caller handed in
something malformed, or an identity that must hold came out nonzero.
Every error may carry the offending residual so reports can print it.
"""


class CartanError(Exception):
    """Base class for every error raised by the engine."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ExpressionError(CartanError):
    """Scalar-level failure in the symbolic kernel."""


class ParseError(ExpressionError):
    """Expression text does not follow the grammar."""

    def __init__(self, message, position=None):
        if position is not None:
            message = "%s at position %d" % (message, position)
        super().__init__(message)
        self.position = position


class ZeroDenominatorError(ExpressionError):
    """Division by an identically zero expression."""


class PoleError(ExpressionError):
    """Evaluation hit a vanishing denominator."""


class RadicalError(ExpressionError):
    """Radical refused (|B| != 1) or two different radicals mixed."""


class BranchError(ExpressionError):
    """The square root cannot be evaluated exactly at the requested point."""


class SingularMatrixError(CartanError):
    """A frame, coframe or linear system is singular."""


class InconsistentSystemError(CartanError):
    """An overdetermined linear decomposition has no exact solution."""


class PinnedSlotError(CartanError):
    """A structure coefficient fixed by the frame construction came out wrong."""

    def __init__(self, slot, residual):
        super().__init__("pinned slot %s violated" % (slot,), residual)
        self.slot = slot


class ExtractionError(CartanError):
    """A required slot of the final structure equations does not hold."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class AuditError(CartanError):
    """Conjugation audit found a mismatch."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ManifoldFileError(CartanError):
    """Manifold file is missing, malformed or describes a non-real graph."""


class TangencyError(CartanError):
    """The computed CR generator is not tangent to the graph."""
