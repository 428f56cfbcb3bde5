"""Comparisons with a residual threshold for floating lifts."""

import math
from dataclasses import dataclass

from circle_core.model import Number
from semiconj.model import ClauseCheck


@dataclass(frozen=True)
class Tolerance:
    """
    Comparison rules of certificates.

    With threshold 0 all comparisons are exact. Otherwise strict inequalities pass if they are violated by less
    than the threshold, equalities if both sides differ by at most the threshold.
    """

    threshold: float = 0.0

    def less(self, clause: str, a: Number, b: Number, **context) -> ClauseCheck:
        margin = b - a
        passed = margin > 0 if self.threshold == 0 else margin > -self.threshold
        return ClauseCheck(clause, bool(passed), margin, **context)

    def equal(self, clause: str, a: Number, b: Number, **context) -> ClauseCheck:
        margin = -abs(a - b)
        return ClauseCheck(clause, bool(-margin <= self.threshold), margin, **context)

    def interval_inclusion(
        self, clause: str, image: tuple[Number, Number], target: tuple[Number, Number], **context
    ) -> ClauseCheck:
        """
        Check that the image arc [u, v] lies in the target arc [c, d] up to an integer translation.

        Both arcs are shorter than one, so the shift is determined by the left ends.
        """
        (u, v), (c, d) = image, target
        shift = math.floor(u - c + self.threshold)
        margin = min(u - shift - c, d - (v - shift))
        return ClauseCheck(clause, bool(margin >= -self.threshold), margin, **context)

    def half_open_inclusion(
        self, clause: str, image: tuple[Number, Number], target: tuple[Number, Number], **context
    ) -> ClauseCheck:
        """Check (a, b] in (c, d], which holds iff c <= a and b <= d."""
        (a, b), (c, d) = image, target
        margin = min(a - c, d - b)
        return ClauseCheck(clause, bool(margin >= -self.threshold), margin, **context)

    def interior(self, clause: str, point: Number, target: tuple[Number, Number], **context) -> ClauseCheck:
        """Check that a point lies in the open interval (c, d)."""
        c, d = target
        margin = min(point - c, d - point)
        passed = margin > 0 if self.threshold == 0 else margin > -self.threshold
        return ClauseCheck(clause, bool(passed), margin, **context)
