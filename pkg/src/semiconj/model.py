"""Certificate and map definitions."""

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from circle_core.lifts import flatten
from circle_core.model import LiftHomeo, Number, PiecewiseLinear


@dataclass(frozen=True)
class MonotoneMap:
    """
    Nondecreasing piecewise linear map with h(x+1) = h(x) + 1.

    Unlike lifts of homeomorphisms, flat pieces are allowed.
    """

    points: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        points = tuple((Fraction(x), Fraction(y)) for x, y in self.points)
        if not points:
            raise ValueError("A monotone map needs at least one breakpoint.")
        xs = [x for x, _ in points]
        ys = [y for _, y in points]
        if xs[0] < 0 or xs[-1] >= 1 or any(x1 >= x2 for x1, x2 in zip(xs, xs[1:])):
            raise ValueError("Breakpoint abscissae must be strictly increasing in [0, 1).")
        if any(y1 > y2 for y1, y2 in zip(ys, ys[1:])) or ys[-1] > ys[0] + 1:
            raise ValueError("Breakpoint values must be nondecreasing on the line.")
        object.__setattr__(self, "points", points)

    @classmethod
    def from_lift(cls, lift: LiftHomeo) -> "MonotoneMap":
        """Use an exact lift of a homeomorphism as monotone map."""
        flat = flatten(lift)
        if not isinstance(flat, PiecewiseLinear):
            raise ValueError("Only exact lifts can be converted into monotone maps.")
        return cls(flat.points)

    @cached_property
    def _extended(self) -> tuple[list[Fraction], list[Fraction]]:
        (x_first, y_first), (x_last, y_last) = self.points[0], self.points[-1]
        return (
            [x_last - 1, *(x for x, _ in self.points), x_first + 1],
            [y_last - 1, *(y for _, y in self.points), y_first + 1],
        )

    def evaluate(self, x: Number) -> Number:
        n = math.floor(x)
        r = x - n
        xs, ys = self._extended
        i = bisect_right(xs, r, lo=1, hi=len(xs) - 1) - 1
        return ys[i] + (r - xs[i]) * (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]) + n

    def evaluate_array(self, xs: np.ndarray) -> np.ndarray:
        xp, fp = (np.array([float(v) for v in values]) for values in self._extended)
        n = np.floor(xs)
        return np.interp(xs - n, xp, fp) + n


@dataclass(frozen=True)
class ClauseCheck:
    """Verdict of a single certificate clause, `margin` is negative for violations."""

    clause: str
    passed: bool
    margin: Number
    index: int | None = None
    word: str | None = None


@dataclass(frozen=True)
class WordVerdict:
    """Rotation number of a checked word and how it was obtained."""

    word: str
    conjugacy: str
    rotation: Fraction
    method: str
    margin: Number | None = None


@dataclass
class Case1Certificate:
    """Interval trapping data for an action with rotation triple (1/2, 1/3, 0)."""

    x0: Number
    arc_i: tuple[Number, Number]
    arc_j: tuple[Number, Number]
    chain: tuple[Number, Number, Number, Number]
    threshold: float
    max_syllables: int
    generator_checks: list[ClauseCheck] = field(default_factory=list)
    word_verdicts: list[WordVerdict] = field(default_factory=list)
    cross_checked: int = 0

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.generator_checks)


@dataclass
class InequalityReport:
    """Order relations between the lifts of an action with rotation triple (1/2, 2/3, 1/5)."""

    x0: Number
    window: int
    threshold: float
    checks: list[ClauseCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


@dataclass(frozen=True)
class MarkovInterval:
    """Half-open intervals I_l = (i_lo, i_hi] and J_l = (j_lo, j_hi] with i_hi = j_lo."""

    index: int
    i_lo: Number
    i_hi: Number
    j_lo: Number
    j_hi: Number


@dataclass
class MarkovCertificate:
    """Markov partition of the orbit of x0 under the lift of alpha*beta with translation number 1/5."""

    x0: Number
    window: int
    threshold: float
    orbit: dict[int, Number]
    intervals: dict[int, MarkovInterval]
    checks: list[ClauseCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


@dataclass
class ThetaMap:
    """
    Equivariant map of period five, tabulated on orbit points over one period.

    `points` holds pairs (p, theta(p)) with p in [0, 1), sorted by p.
    """

    points: tuple[tuple[Number, Number], ...]
    max_syllables: int
    threshold: float
    equivariance_residual: float
    period_residual: float
    extension_residual: float
    max_gap: float
    shift_range: tuple[Number, Number]
    # Table points on which each residual was measured
    equivariance_coverage: int = 0
    period_coverage: int = 0

    @cached_property
    def extension(self) -> PiecewiseLinear:
        """Monotone piecewise linear interpolation of the table."""
        return PiecewiseLinear(tuple((Fraction(x), Fraction(y)) for x, y in self.points))

    def evaluate(self, x: Number) -> Number:
        return self.extension.evaluate(x)
