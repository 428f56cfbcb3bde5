"""Certified translation numbers and detection of periodic points."""

import math
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq, minimize_scalar

import config
from circle_core.lifts import flatten, power
from circle_core.model import Covering, Enclosure, LiftHomeo, Mobius, Number, PiecewiseLinear, Rotation, mod_one
from logging_helper import get_logger

logger = get_logger(__name__)

# Grid used to locate roots of F^q(x) - x - p on floating lifts
ROOT_GRID = 4096

# Absolute tolerance of the scalar root and minimum searches
ROOT_XTOL = 1e-15

# Number of retries with doubled iteration count before giving up on the width bound
_MAX_REFINEMENTS = 4


def _interval_iteration(f: LiftHomeo, n: int, samples: int) -> Enclosure:
    """Sound enclosure by iterating lower and upper bounds of sample orbits with outward rounding."""
    starts = np.arange(samples, dtype=float) / samples
    lo, hi = starts.copy(), starts.copy()
    carried = np.zeros(samples, dtype=np.int64)
    for _ in range(n):
        lo, hi = f.bounds(lo, hi)
        integer_part = np.floor(lo)
        lo, hi = lo - integer_part, hi - integer_part
        carried += integer_part.astype(np.int64)

    # (F^n(x) - x - 1)/n < rot < (F^n(x) - x + 1)/n for every x
    i_lo = int(np.argmax(carried + lo - starts))
    i_hi = int(np.argmin(carried + hi - starts))
    bound_lo = (int(carried[i_lo]) + Fraction(float(lo[i_lo])) - Fraction(float(starts[i_lo])) - 1) / n
    bound_hi = (int(carried[i_hi]) + Fraction(float(hi[i_hi])) - Fraction(float(starts[i_hi])) + 1) / n
    return Enclosure(bound_lo, max(bound_lo, bound_hi), iterations=n)


def _exact_iteration(f: LiftHomeo, n: int) -> Enclosure:
    """Enclosure from the exact orbit of 0, rational arithmetic throughout."""
    g = flatten(f)
    x, carried = Fraction(0), 0
    for _ in range(n):
        x = g.evaluate(x)
        integer_part = math.floor(x)
        x, carried = x - integer_part, carried + integer_part
    displacement = carried + x
    return Enclosure((displacement - 1) / n, (displacement + 1) / n, iterations=n)


def translation_number_enclosure(f: LiftHomeo, n: int | None = None, samples: int = 16) -> Enclosure:
    """
    Get a rigorous enclosure of the translation number of a lift.

    Uses |rot(F) - (F^n(x) - x)/n| < 1/n, intersected over the sample points. Floating evaluation is
    rounded outward, exact lifts fall back to rational iteration if rounding widens the enclosure beyond
    2/n.

    :param f: the lift
    :param n: number of iterations
    :param samples: number of equidistant starting points in [0, 1)
    :returns: an enclosure of width at most 2/n
    :raises ValueError: if n or samples are not positive
    """
    n = config.ITERS if n is None else n
    if n < 1 or samples < 1:
        raise ValueError("Iteration and sample counts must be positive.")

    if isinstance(f, Rotation):
        t = Fraction(f.t)
        return Enclosure(t, t, iterations=0)

    bound = Fraction(2, n)
    enclosure = _interval_iteration(f, n, samples)
    if enclosure.width <= bound:
        return enclosure
    if f.exact:
        logger.debug(f"Rounding widened enclosure to {float(enclosure.width)}, using exact iteration")
        return _exact_iteration(f, n)

    iterations = n
    for _ in range(_MAX_REFINEMENTS):
        iterations *= 2
        enclosure = _interval_iteration(f, iterations, samples)
        if enclosure.width <= bound:
            break
    logger.debug(f"Floating enclosure after {iterations} iterations has width {float(enclosure.width)}")
    return enclosure


def _find_root_pl(g: PiecewiseLinear, p: int) -> Fraction | None:
    """Exact scan for a zero of g(x) - x - p, breakpoints first, then sign changes on segments."""
    xs = list(g.xs) + [g.xs[0] + 1]
    values = [g.evaluate(x) - x - p for x in xs]
    for x, value in zip(xs[:-1], values[:-1]):
        if value == 0:
            return x
    for i in range(len(xs) - 1):
        if (values[i] < 0) != (values[i + 1] < 0):
            root = xs[i] - values[i] * (xs[i + 1] - xs[i]) / (values[i + 1] - values[i])
            return mod_one(root)
    return None


def _chart_candidates(f: LiftHomeo) -> list[float]:
    """Points over the fixed points of a Möbius lift or of the base of a Möbius covering."""
    if isinstance(f, Mobius):
        return f.fixed_points()
    if isinstance(f, Covering) and isinstance(f.base, Mobius):
        return [float(mod_one((y + i) / f.k)) for y in f.base.fixed_points() for i in range(f.k)]
    return []


def _find_root_float(f: LiftHomeo, q: int, p: int, tolerance: float) -> float | None:
    """Grid scan, Brent's method on the first sign change, bounded minimisation for tangential zeros."""

    def displacement(x: float) -> float:
        y = x
        for _ in range(q):
            y = f.evaluate(y)
        return y - x - p

    xs = np.arange(ROOT_GRID + 1, dtype=float) / ROOT_GRID
    ys = xs.copy()
    for _ in range(q):
        ys = f.evaluate_array(ys)
    values = ys - xs - p

    exact_zeros = np.flatnonzero(values[:-1] == 0.0)
    if exact_zeros.size:
        return float(xs[exact_zeros[0]])

    changes = np.flatnonzero(np.signbit(values[:-1]) != np.signbit(values[1:]))
    if changes.size:
        a, b = float(xs[changes[0]]), float(xs[changes[0] + 1])
        if displacement(a) * displacement(b) < 0:
            return mod_one(brentq(displacement, a, b, xtol=ROOT_XTOL))
        return mod_one(a if abs(displacement(a)) <= abs(displacement(b)) else b)

    nearest = int(np.argmin(np.abs(values)))
    step = 1.0 / ROOT_GRID
    result = minimize_scalar(
        lambda t: abs(displacement(t)),
        bounds=(float(xs[nearest]) - step, float(xs[nearest]) + step),
        method="bounded",
        options={"xatol": ROOT_XTOL},
    )
    x = float(result.x)
    if abs(displacement(x)) <= tolerance:
        return mod_one(x)
    return None


def find_translation_point(f: LiftHomeo, q: int, p: int, tolerance: float | None = None) -> Number | None:
    """
    Find a point x with F^q(x) = x + p.

    The search is exact for exact lifts. Floating lifts accept a residual of at most `tolerance`, periodic points
    over the fixed points of a Möbius matrix are solved in the chart first.

    :param f: the lift
    :param q: number of iterations
    :param p: integer translation
    :param tolerance: accepted residual for floating lifts
    :returns: a witness in [0, 1) or None if no such point exists
    """
    if q < 1:
        raise ValueError("The period must be positive.")
    tolerance = config.RELATION_THRESHOLD if tolerance is None else tolerance

    if isinstance(f, Rotation):
        residual = q * f.t - p
        if (f.exact and residual == 0) or (not f.exact and abs(residual) <= tolerance):
            return Fraction(0)
        return None

    if f.exact:
        return _find_root_pl(flatten(power(flatten(f), q)), p)
    iterate = power(f, q)
    for x in _chart_candidates(iterate):
        if abs(iterate.evaluate(x) - x - p) <= tolerance:
            return x
    return _find_root_float(f, q, p, tolerance)


def detect_rational_rotation(
    f: LiftHomeo, q_max: int | None = None, tolerance: float | None = None
) -> tuple[Fraction, Number] | None:
    """
    Detect a rational rotation number through a periodic point.

    Periods are searched in increasing order, so the returned fraction is reduced.

    :param f: the lift
    :param q_max: largest period searched
    :param tolerance: accepted residual for floating lifts
    :returns: tuple of the rotation number in [0, 1) and a witness, None if no periodic point of period at most
        q_max exists
    :raises ValueError: if q_max is not positive
    """
    q_max = config.Q_MAX if q_max is None else q_max
    if q_max < 1:
        raise ValueError("q_max must be positive.")

    enclosure = translation_number_enclosure(f, max(16, 8 * q_max), samples=8)
    for q in range(1, q_max + 1):
        for p in range(math.ceil(enclosure.lo * q), math.floor(enclosure.hi * q) + 1):
            witness = find_translation_point(f, q, p, tolerance)
            if witness is not None:
                logger.debug(f"Periodic point of type {p}/{q} at {float(witness)}")
                return mod_one(Fraction(p, q)), witness
    return None
