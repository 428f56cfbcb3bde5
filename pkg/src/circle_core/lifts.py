"""Operations on lifts: composition, inversion, flattening and comparison."""

from fractions import Fraction

import numpy as np

import config
from circle_core.model import (
    Composite,
    Covering,
    LiftHomeo,
    Mobius,
    Number,
    PiecewiseLinear,
    Rotation,
    mod_one,
)
from logging_helper import get_logger

logger = get_logger(__name__)


def identity() -> Rotation:
    """Get the identity lift."""
    return Rotation(Fraction(0))


def evaluate(f: LiftHomeo, x: Number) -> Number:
    """
    Evaluate a lift at a point.

    :param f: the lift
    :param x: a rational (exact evaluation for exact lifts) or a float
    :returns: F(x)
    """
    return f.evaluate(x)


def inverse(f: LiftHomeo) -> LiftHomeo:
    """Get the inverse of a lift."""
    return f.inverse()


def translate(f: LiftHomeo, m: int) -> LiftHomeo:
    """Post-compose a lift with the integer translation by m."""
    return f.translate(m)


def _as_pl(f: LiftHomeo) -> PiecewiseLinear | None:
    """Closed form of an exact lift as piecewise linear map, None if no closed form exists."""
    if isinstance(f, PiecewiseLinear):
        return f
    if isinstance(f, Rotation):
        return PiecewiseLinear(((Fraction(0), f.t),)) if f.exact else None
    if isinstance(f, Covering):
        base = _as_pl(f.base)
        if base is None:
            return None
        points = []
        for m in range(f.k):
            points.extend(((x + m) / f.k, (y + m + f.offset) / f.k) for x, y in base.points)
        return PiecewiseLinear(tuple(points))
    if isinstance(f, Composite):
        if not f.exact:
            return None
        result = _as_pl(identity())
        for factor in reversed(f.factors):
            result = _compose_pl(_as_pl(factor), result)
        return result.translate(f.shift)
    return None


def _simplify(points: list[tuple[Fraction, Fraction]]) -> tuple[tuple[Fraction, Fraction], ...]:
    """Drop breakpoints at which the slope does not change."""
    if len(points) <= 1:
        return tuple(points)
    x_last, y_last = points[-1]
    x_first, y_first = points[0]
    extended = [(x_last - 1, y_last - 1), *points, (x_first + 1, y_first + 1)]
    kept = []
    for i in range(1, len(extended) - 1):
        (x0, y0), (x1, y1), (x2, y2) = extended[i - 1], extended[i], extended[i + 1]
        if (y1 - y0) * (x2 - x1) != (y2 - y1) * (x1 - x0):
            kept.append(extended[i])
    return tuple(kept) if kept else (points[0],)


def _compose_pl(f: PiecewiseLinear, g: PiecewiseLinear) -> PiecewiseLinear:
    """Closed form of f o g for piecewise linear lifts."""
    g_inverse = g.inverse()
    candidates = set(g.xs)
    candidates.update(mod_one(g_inverse.evaluate(x)) for x in f.xs)
    points = [(x, f.evaluate(g.evaluate(x))) for x in sorted(candidates)]
    return PiecewiseLinear(_simplify(points))


def _compose_mobius(f: Mobius, g: Mobius) -> Mobius:
    """Lift of the product matrix, the sheet is fixed by comparing at one point."""
    product = Mobius.from_matrix(f.matrix @ g.matrix)
    reference = 0.5
    sheet = round(f.evaluate(g.evaluate(reference)) - product.evaluate(reference))
    return product.translate(sheet)


def compose(f: LiftHomeo, g: LiftHomeo) -> LiftHomeo:
    """
    Get the lift of f o g.

    Closed forms are used for rotations, piecewise linear lifts, Möbius lifts and coverings of equal degree.
    Mixed compositions are kept as `Composite`.

    :param f: outer lift
    :param g: inner lift
    :returns: the composed lift
    """
    if isinstance(f, Rotation) and isinstance(g, Rotation):
        return Rotation(f.t + g.t)
    if isinstance(f, Rotation) and f.t == int(f.t):
        return g.translate(int(f.t))
    if isinstance(g, Rotation) and g.t == int(g.t):
        return f.translate(int(g.t))
    if isinstance(f, Mobius) and isinstance(g, Mobius):
        return _compose_mobius(f, g)
    if isinstance(f, Covering) and isinstance(g, Covering) and f.k == g.k:
        return covering(compose(f.base, g.base), f.k, f.offset + g.offset)
    if isinstance(f, (PiecewiseLinear, Rotation)) and isinstance(g, (PiecewiseLinear, Rotation)):
        f_pl, g_pl = _as_pl(f), _as_pl(g)
        if f_pl is not None and g_pl is not None:
            return _compose_pl(f_pl, g_pl)

    f_factors, f_shift = (f.factors, f.shift) if isinstance(f, Composite) else ((f,), 0)
    g_factors, g_shift = (g.factors, g.shift) if isinstance(g, Composite) else ((g,), 0)
    return Composite(f_factors + g_factors, f_shift + g_shift)


def power(f: LiftHomeo, n: int) -> LiftHomeo:
    """Get the n-th iterate of a lift, negative exponents iterate the inverse."""
    if n < 0:
        return power(f.inverse(), -n)
    result = identity()
    for _ in range(n):
        result = compose(f, result)
    return result


def flatten(f: LiftHomeo) -> LiftHomeo:
    """
    Collapse an exact lift into a single piecewise linear lift.

    Lifts without exact closed form are returned unchanged.
    """
    if isinstance(f, PiecewiseLinear):
        return f
    flat = _as_pl(f) if f.exact else None
    return f if flat is None else flat


def covering(base: LiftHomeo, k: int, offset: int) -> LiftHomeo:
    """
    Get the lift x -> (base(kx) + offset)/k to the k-fold cover.

    :param base: lift of the covered map
    :param k: degree of the covering
    :param offset: integer offset selecting one of the lifts
    :returns: a rotation or piecewise linear lift if the base has a closed form, a `Covering` otherwise
    """
    if isinstance(base, Rotation):
        return Rotation((base.t + offset) / k if base.exact else (float(base.t) + offset) / k)
    lift = Covering(base, k, offset)
    closed = _as_pl(lift) if lift.exact else None
    logger.debug(f"Covering lift of degree {k} with offset {offset}, closed form: {closed is not None}")
    return lift if closed is None else closed


def _sample_grid(samples: int) -> np.ndarray:
    return np.arange(samples, dtype=float) / samples


def difference_extremes(f: LiftHomeo, g: LiftHomeo, samples: int | None = None) -> tuple[Number, Number]:
    """
    Get the minimum and maximum of g(x) - f(x) over one period.

    The difference of two piecewise linear lifts attains its extremes on the union of their breakpoints,
    so the result is exact for exact lifts. Otherwise it is sampled on a uniform grid.

    :param f: subtracted lift
    :param g: lift
    :param samples: grid size used for floating lifts
    :returns: tuple of (min, max)
    """
    if f.exact and g.exact:
        f_pl, g_pl = flatten(f), flatten(g)
        xs = sorted(set(f_pl.xs) | set(g_pl.xs))
        differences = [g_pl.evaluate(x) - f_pl.evaluate(x) for x in xs]
        return min(differences), max(differences)
    xs = _sample_grid(samples or config.SAMPLES)
    differences = g.evaluate_array(xs) - f.evaluate_array(xs)
    return float(differences.min()), float(differences.max())


def translation_residual(f: LiftHomeo, m: int, samples: int | None = None) -> Number:
    """Get max |F(x) - x - m| over one period, exact for exact lifts."""
    low, high = difference_extremes(identity(), f, samples)
    return max(abs(low - m), abs(high - m))


def nearest_translation(f: LiftHomeo, samples: int | None = None) -> tuple[int, Number]:
    """
    Find the integer translation closest to a lift.

    :returns: tuple of the integer m and the residual max |F(x) - x - m|
    """
    low, high = difference_extremes(identity(), f, samples)
    m = round((low + high) / 2)
    return m, max(abs(low - m), abs(high - m))


def is_integer_translation(f: LiftHomeo, m: int, threshold: float = 0.0, samples: int | None = None) -> bool:
    """Check if a lift equals the translation by m, exactly or within the threshold for floating lifts."""
    residual = translation_residual(f, m, samples)
    if f.exact:
        return residual == 0
    return residual <= threshold


def orbit(f: LiftHomeo, x: Number, steps: int) -> list[Number]:
    """Get x, F(x), ..., F^steps(x); negative steps iterate the inverse."""
    g = f if steps >= 0 else f.inverse()
    points = [x]
    for _ in range(abs(steps)):
        points.append(g.evaluate(points[-1]))
    return points
