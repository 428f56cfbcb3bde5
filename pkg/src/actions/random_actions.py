"""Seeded generation of actions with a prescribed rotation triple."""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from actions.actions import conjugate_action, fuchsian_O23, involution_lift, k_fold_lift, rotation_triple
from actions.model import FIVE_FOLD_TRIPLE, FUCHSIAN_TRIPLE, Backend, CircleAction, RotationTriple
from circle_core.model import PiecewiseLinear
from errors import UnsupportedTriple
from logging_helper import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class RandomParams:
    """Shape of the random piecewise linear maps."""

    breakpoints: int = 4
    denominator: int = 12
    conjugate: bool = True


def _distinct_fractions(rng: np.random.Generator, count: int, denominator: int) -> list[Fraction]:
    """Sorted distinct values i/denominator with 0 < i < denominator."""
    chosen = rng.choice(np.arange(1, denominator), size=count, replace=False)
    return [Fraction(int(i), denominator) for i in sorted(chosen)]


def random_pl_homeo(rng: np.random.Generator, breakpoints: int = 4, denominator: int = 12) -> PiecewiseLinear:
    """
    Draw a random piecewise linear lift with rational breakpoints.

    :param rng: seeded generator
    :param breakpoints: number of breakpoints per period
    :param denominator: common denominator of the breakpoint coordinates
    :raises ValueError: if the grid has less than `breakpoints` interior points
    """
    if not 1 <= breakpoints < denominator:
        raise ValueError(f"Cannot place {breakpoints} breakpoints on a grid with denominator {denominator}.")
    xs = [Fraction(0)] + _distinct_fractions(rng, breakpoints - 1, denominator)
    ys = _distinct_fractions(rng, breakpoints, denominator)
    return PiecewiseLinear(tuple(zip(xs, ys)))


def _random_involution_lift(rng: np.random.Generator, params: RandomParams) -> PiecewiseLinear:
    """Draw a lift a with a^2 = translation by one and a(1/3) = 1 from a random branch [1/3, 1] -> [1, 4/3]."""
    one_third = Fraction(1, 3)
    xs = [one_third + 2 * one_third * t for t in _distinct_fractions(rng, params.breakpoints, params.denominator)]
    ys = [1 + one_third * t for t in _distinct_fractions(rng, params.breakpoints, params.denominator)]
    branch = [(one_third, Fraction(1)), *zip(xs, ys), (Fraction(1), 1 + one_third)]
    return involution_lift(branch)


def random_action(
    target: RotationTriple | tuple, seed: int, params: RandomParams | None = None
) -> CircleAction:
    """
    Draw an exact piecewise linear action with the given rotation triple.

    For (1/2, 1/3, 0) beta acts by the rotation by 1/3 and alpha is a random involution with a(1/3) = 1, for
    (1/2, 2/3, 1/5) the 5-fold lift of the Fuchsian action is used. Both are conjugated by a random
    piecewise linear homeomorphism unless disabled.

    :param target: rotation triple
    :param seed: seed of the generator
    :param params: shape of the random maps
    :returns: an action whose verified rotation triple equals the target
    :raises UnsupportedTriple: for other triples
    """
    params = params or RandomParams()
    values = tuple(Fraction(v) for v in (target.entries if isinstance(target, RotationTriple) else target))
    rng = np.random.default_rng(seed)

    if values == FUCHSIAN_TRIPLE:
        lift_b = PiecewiseLinear(((Fraction(0), Fraction(1, 3)),))
        lift_a = _random_involution_lift(rng, params)
        phi = CircleAction(lift_a, lift_b, Fraction(1, 2), Fraction(1, 3), Backend.PL, name=f"random({seed})")
    elif values == FIVE_FOLD_TRIPLE:
        phi = k_fold_lift(fuchsian_O23(Backend.PL), 5)
    else:
        raise UnsupportedTriple(f"Random generation supports {FUCHSIAN_TRIPLE} and {FIVE_FOLD_TRIPLE}, got {values}.")

    if params.conjugate:
        phi = conjugate_action(phi, random_pl_homeo(rng, params.breakpoints, params.denominator))
    phi = CircleAction(phi.lift_a, phi.lift_b, phi.rot_a, phi.rot_b, Backend.PL, name=f"random({seed})")

    triple = rotation_triple(phi, q_max=5)
    if triple.entries != values:
        raise RuntimeError(f"Generated action has triple {triple}, expected {values}.")
    logger.debug(f"Random action for seed {seed} verified with triple {triple}")
    return phi
