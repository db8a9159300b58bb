"""
Exceptions raised by the NewtonLab model layer. Controllers catch ``NewtonLabError`` and turn it into a
``(False, message)`` return value.
"""

from __future__ import annotations

from typing import List


class NewtonLabError(Exception):
    """
    Base class for every error raised by NewtonLab.
    """


class DegenerateInput(NewtonLabError):
    """The input polynomial is identically zero or otherwise unusable."""


class NonConvergence(NewtonLabError):
    """
    An iterative solver ran out of sweeps. The roots found so far are kept in ``partial``.
    """

    def __init__(self, message: str, partial: List[complex] | None = None):
        super().__init__(message)
        self.partial: List[complex] = partial if partial is not None else []


class NotFixed(NewtonLabError):
    """The point given is not a fixed point of the map."""


class NotParabolic(NewtonLabError):
    """The point at infinity is not a parabolic fixed point."""


class Inconclusive(NewtonLabError):
    """A numerical test could not reach a verdict within its budget."""


class Ambiguous(NewtonLabError):
    """Two candidates are equally good and no choice can be made."""


class BadDegree(NewtonLabError):
    """Degree out of the supported range."""


class PoleHit(NewtonLabError):
    """Evaluation at a pole."""


class NoBracket(NewtonLabError):
    """Endpoint evaluations do not straddle the target."""


class BadRadius(NewtonLabError):
    """Gluing radius outside ``(alpha, 1)``."""


class DegenerateJacobian(NewtonLabError):
    """The sampled map is not orientation-preserving at the sample scale."""


class BranchCut(NewtonLabError):
    """The principal logarithm is undefined or ambiguous at the point."""


class OutOfDomain(NewtonLabError):
    """The point lies outside the domain of the map."""


class EmptyTail(NewtonLabError):
    """No cell exceeds the smallest threshold."""


class DepthOverflow(NewtonLabError):
    """The number of preimages exceeds the budget."""


class MarkingInvalid(NewtonLabError):
    """A marked basin cannot be used for surgery."""


class NonSuperattracting(NewtonLabError):
    """The fixed point has a nonzero multiplier."""


class BranchLoss(NewtonLabError):
    """No inverse branch keeps the ray inside its basin."""


class DoubleMark(NewtonLabError):
    """Two marked rays share a basin."""
