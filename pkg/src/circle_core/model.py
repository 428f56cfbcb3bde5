"""Lift definitions for orientation-preserving circle homeomorphisms."""

import cmath
import math
from abc import ABC, abstractmethod
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from errors import MalformedLift

Number = Fraction | float

# Rational1: a Fraction in [0, 1), the canonical representative of an element of R/Z
Rational1 = Fraction

# Relative rounding error accepted for a single floating evaluation
_EPSILON = 2.0**-48

# Imaginary part accepted for a double root of a parabolic matrix
_PARABOLIC_IMAG = 1e-6


def mod_one(value: Number) -> Number:
    """Reduce a real number to its representative in [0, 1)."""
    return value - math.floor(value)


def to_number(value: Number | int | str) -> Number:
    """Convert user input into an exact Fraction unless it is a float."""
    if isinstance(value, float):
        return value
    return Fraction(value)


def chart_inverse(u: float) -> float:
    """Circle point in [0, 1) with chart value u, infinity maps to 0."""
    if math.isinf(u):
        return 0.0
    return 0.5 + math.atan(u) / math.pi


class LiftHomeo(ABC):
    """A strictly increasing real map F with F(x+1) = F(x)+1."""

    @abstractmethod
    def evaluate(self, x: Number) -> Number:
        """Evaluate F at x."""

    @abstractmethod
    def evaluate_array(self, xs: np.ndarray) -> np.ndarray:
        """Evaluate F in floating point on an array of points."""

    @abstractmethod
    def inverse(self) -> "LiftHomeo":
        """Get the inverse lift."""

    @abstractmethod
    def translate(self, m: int) -> "LiftHomeo":
        """Post-compose with the integer translation by m."""

    @property
    @abstractmethod
    def exact(self) -> bool:
        """True if evaluation at rationals is exact."""

    @property
    @abstractmethod
    def rounding_margin(self) -> float:
        """Bound of the absolute error of `evaluate_array` for inputs of moderate size."""

    def bounds(self, lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """
        Outward rounded image of the point intervals [lo, hi].

        :param lo: lower ends
        :param hi: upper ends
        :returns: arrays enclosing F(lo) from below and F(hi) from above
        """
        margin = self.rounding_margin
        return self.evaluate_array(lo) - margin, self.evaluate_array(hi) + margin

    def __call__(self, x: Number) -> Number:
        return self.evaluate(x)


@dataclass(frozen=True)
class Rotation(LiftHomeo):
    """Rigid translation x -> x + t."""

    t: Number

    def __post_init__(self):
        object.__setattr__(self, "t", to_number(self.t))

    def evaluate(self, x: Number) -> Number:
        return x + self.t

    def evaluate_array(self, xs: np.ndarray) -> np.ndarray:
        return xs + float(self.t)

    def inverse(self) -> "Rotation":
        return Rotation(-self.t)

    def translate(self, m: int) -> "Rotation":
        return Rotation(self.t + m)

    @property
    def exact(self) -> bool:
        return isinstance(self.t, Fraction)

    @property
    def rounding_margin(self) -> float:
        return _EPSILON * (4.0 + abs(float(self.t)))


@dataclass(frozen=True)
class PiecewiseLinear(LiftHomeo):
    """
    Piecewise linear lift given by its breakpoints over one period.

    The map interpolates linearly between (x_i, y_i) and continues periodically
    through (x_0 + 1, y_0 + 1).
    """

    points: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        points = tuple((Fraction(x), Fraction(y)) for x, y in self.points)
        if len(points) == 0:
            raise MalformedLift("A piecewise linear lift needs at least one breakpoint.")
        xs = [x for x, _ in points]
        ys = [y for _, y in points]
        if xs[0] < 0 or xs[-1] >= 1:
            raise MalformedLift("Breakpoint abscissae must lie in [0, 1).")
        if any(x1 >= x2 for x1, x2 in zip(xs, xs[1:])):
            raise MalformedLift("Breakpoint abscissae must be strictly increasing.")
        if any(y1 >= y2 for y1, y2 in zip(ys, ys[1:])) or ys[-1] - ys[0] >= 1:
            raise MalformedLift("Breakpoint values must be strictly increasing on the line.")
        object.__setattr__(self, "points", points)

    @classmethod
    def from_points(cls, points) -> "PiecewiseLinear":
        """Build a lift from points with arbitrary real abscissae, reduced into one period."""
        reduced = {}
        for x, y in points:
            x, y = Fraction(x), Fraction(y)
            n = math.floor(x)
            reduced[x - n] = y - n
        return cls(tuple(sorted(reduced.items())))

    @property
    def xs(self) -> tuple[Fraction, ...]:
        return tuple(x for x, _ in self.points)

    @property
    def ys(self) -> tuple[Fraction, ...]:
        return tuple(y for _, y in self.points)

    @cached_property
    def _extended(self) -> tuple[list[Fraction], list[Fraction]]:
        x_last, y_last = self.points[-1]
        x_first, y_first = self.points[0]
        xs = [x_last - 1, *self.xs, x_first + 1]
        ys = [y_last - 1, *self.ys, y_first + 1]
        return xs, ys

    @cached_property
    def _extended_float(self) -> tuple[np.ndarray, np.ndarray]:
        xs, ys = self._extended
        return np.array([float(x) for x in xs]), np.array([float(y) for y in ys])

    @cached_property
    def slopes(self) -> tuple[Fraction, ...]:
        """Slopes of the segments starting at each breakpoint."""
        xs, ys = self._extended
        return tuple((ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]) for i in range(1, len(xs) - 1))

    def evaluate(self, x: Number) -> Number:
        n = math.floor(x)
        r = x - n
        xs, ys = self._extended
        i = bisect_right(xs, r, lo=1, hi=len(xs) - 1) - 1
        x_left, y_left, x_right, y_right = xs[i], ys[i], xs[i + 1], ys[i + 1]
        return y_left + (r - x_left) * (y_right - y_left) / (x_right - x_left) + n

    def evaluate_array(self, xs: np.ndarray) -> np.ndarray:
        xp, fp = self._extended_float
        n = np.floor(xs)
        return np.interp(xs - n, xp, fp) + n

    def inverse(self) -> "PiecewiseLinear":
        return PiecewiseLinear.from_points((y, x) for x, y in self.points)

    def translate(self, m: int) -> "PiecewiseLinear":
        return PiecewiseLinear(tuple((x, y + m) for x, y in self.points))

    @property
    def exact(self) -> bool:
        return True

    @property
    def rounding_margin(self) -> float:
        steepest = max(max(self.slopes), 1 / min(self.slopes))
        return 4 * _EPSILON * (1.0 + float(steepest)) * (4.0 + abs(float(self.points[0][1])))


@dataclass(frozen=True)
class Mobius(LiftHomeo):
    """
    Lift of the boundary action of a matrix in SL(2, R).

    In the chart c(t) = tan(pi(t - 1/2)) the lift is
    F(t) = t - (arg p + arg(1 + (q/p) exp(2 pi i t))) / pi + sheet,
    where p = ((a+d) + i(c-b))/2 and q = ((a-d) + i(c+b))/2.
    """

    mat: tuple[float, float, float, float]
    sheet: int = 0

    def __post_init__(self):
        a, b, c, d = (float(v) for v in self.mat)
        det = a * d - b * c
        if not det > 0:
            raise MalformedLift(f"Matrix {self.mat} does not preserve the orientation of the circle.")
        if abs(det - 1.0) > 1e-12:
            scale = math.sqrt(det)
            a, b, c, d = a / scale, b / scale, c / scale, d / scale
        object.__setattr__(self, "mat", (a, b, c, d))
        object.__setattr__(self, "sheet", int(self.sheet))

    @classmethod
    def from_matrix(cls, matrix, sheet: int = 0) -> "Mobius":
        """Create a lift from a 2x2 array-like matrix."""
        m = np.asarray(matrix, dtype=float)
        return cls((m[0, 0], m[0, 1], m[1, 0], m[1, 1]), sheet)

    @property
    def matrix(self) -> np.ndarray:
        a, b, c, d = self.mat
        return np.array([[a, b], [c, d]])

    def fixed_points(self) -> list[float]:
        """
        Get the circle points fixed by the boundary map, sorted in [0, 1).

        Chart values u with (au + b)/(cu + d) = u solve cu^2 + (d - a)u - b = 0, infinity is fixed if c = 0.
        Roots of a parabolic matrix are only accurate to the square root of the rounding error.
        """
        a, b, c, d = self.mat
        roots = [u.real for u in np.roots([c, d - a, -b]) if abs(u.imag) <= _PARABOLIC_IMAG]
        if abs(c) <= _EPSILON:
            roots.append(math.inf)
        return sorted({chart_inverse(u) for u in roots})

    @cached_property
    def _coefficients(self) -> tuple[float, complex]:
        a, b, c, d = self.mat
        p = complex(a + d, c - b) / 2
        q = complex(a - d, c + b) / 2
        return cmath.phase(p), q / p

    def evaluate(self, x: Number) -> float:
        x = float(x)
        n = math.floor(x)
        r = x - n
        phase, ratio = self._coefficients
        turn = cmath.phase(1 + ratio * cmath.exp(2j * math.pi * r))
        return r - (phase + turn) / math.pi + self.sheet + n

    def evaluate_array(self, xs: np.ndarray) -> np.ndarray:
        n = np.floor(xs)
        r = xs - n
        phase, ratio = self._coefficients
        turn = np.angle(1 + ratio * np.exp(2j * np.pi * r))
        return r - (phase + turn) / np.pi + self.sheet + n

    def inverse(self) -> "Mobius":
        a, b, c, d = self.mat
        candidate = Mobius((d, -b, -c, a))
        reference = 0.5
        sheet = round(reference - candidate.evaluate(self.evaluate(reference)))
        return candidate.translate(sheet)

    def translate(self, m: int) -> "Mobius":
        return Mobius(self.mat, self.sheet + m)

    @property
    def exact(self) -> bool:
        return False

    @property
    def rounding_margin(self) -> float:
        return 64 * _EPSILON * (1.0 + sum(v * v for v in self.mat))


@dataclass(frozen=True)
class Covering(LiftHomeo):
    """The lift x -> (base(kx) + offset)/k of a map to the k-fold cover of the circle."""

    base: LiftHomeo
    k: int
    offset: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise MalformedLift(f"Covering degree must be positive, got {self.k}.")

    def evaluate(self, x: Number) -> Number:
        return (self.base.evaluate(self.k * x) + self.offset) / self.k

    def evaluate_array(self, xs: np.ndarray) -> np.ndarray:
        return (self.base.evaluate_array(self.k * xs) + self.offset) / self.k

    def bounds(self, lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        base_lo, base_hi = self.base.bounds(
            np.nextafter(self.k * lo, -np.inf), np.nextafter(self.k * hi, np.inf)
        )
        return (
            np.nextafter((base_lo + self.offset) / self.k, -np.inf),
            np.nextafter((base_hi + self.offset) / self.k, np.inf),
        )

    def inverse(self) -> "Covering":
        return Covering(self.base.inverse(), self.k, -self.offset)

    def translate(self, m: int) -> "Covering":
        return Covering(self.base, self.k, self.offset + self.k * m)

    @property
    def exact(self) -> bool:
        return self.base.exact

    @property
    def rounding_margin(self) -> float:
        return self.base.rounding_margin + 4 * _EPSILON


@dataclass(frozen=True)
class Composite(LiftHomeo):
    """Composition factors[0] o factors[1] o ... followed by an integer translation."""

    factors: tuple[LiftHomeo, ...]
    shift: int = 0

    def evaluate(self, x: Number) -> Number:
        for factor in reversed(self.factors):
            x = factor.evaluate(x)
        return x + self.shift

    def evaluate_array(self, xs: np.ndarray) -> np.ndarray:
        for factor in reversed(self.factors):
            xs = factor.evaluate_array(xs)
        return xs + self.shift

    def bounds(self, lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        for factor in reversed(self.factors):
            lo, hi = factor.bounds(lo, hi)
        return lo + self.shift, hi + self.shift

    def inverse(self) -> "Composite":
        return Composite(tuple(factor.inverse() for factor in reversed(self.factors)), -self.shift)

    def translate(self, m: int) -> "Composite":
        return Composite(self.factors, self.shift + m)

    @property
    def exact(self) -> bool:
        return all(factor.exact for factor in self.factors)

    @property
    def rounding_margin(self) -> float:
        return sum(factor.rounding_margin for factor in self.factors)


@dataclass(frozen=True)
class Enclosure:
    """Closed rational interval [lo, hi] containing a translation number."""

    lo: Fraction
    hi: Fraction
    iterations: int = field(default=0, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"Empty enclosure [{self.lo}, {self.hi}].")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def pinned(self) -> bool:
        """True if the enclosure determines the value exactly."""
        return self.lo == self.hi

    def contains(self, value: Number) -> bool:
        return self.lo <= Fraction(value) <= self.hi

    def shifted(self, m: int) -> "Enclosure":
        return Enclosure(self.lo + m, self.hi + m, self.iterations)

    def mod_one(self) -> "Enclosure":
        """Shift the enclosure so that its lower end lies in [0, 1)."""
        return self.shifted(-math.floor(self.lo))
