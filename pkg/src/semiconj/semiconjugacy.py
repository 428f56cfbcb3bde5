"""Residual of the semi-conjugacy relation h o phi1(g) = phi2(g) o h."""

from collections.abc import Iterable
from fractions import Fraction

import numpy as np

from actions.actions import apply
from actions.model import CircleAction
from circle_core.model import Number
from group_words.model import Word
from logging_helper import get_logger
from semiconj.model import MonotoneMap

logger = get_logger(__name__)

# Words checked if none are given, the relation on generators implies it for all words
GENERATOR_WORDS = ("a", "b")


def circle_distance(u: Number, v: Number) -> Number:
    """Distance of two real numbers as points of R/Z."""
    difference = u - v
    return abs(difference - round(difference))


def check_semiconjugacy(
    h: MonotoneMap,
    phi_1: CircleAction,
    phi_2: CircleAction,
    words: Iterable[Word | str] | None = None,
    sample_count: int = 256,
) -> Number:
    """
    Measure how far h is from semi-conjugating phi_1 to phi_2.

    Exact actions are evaluated exactly at the rational sample points i/sample_count.

    :param h: degree one monotone map
    :param phi_1: source action
    :param phi_2: target action
    :param words: words to check, the generators by default
    :param sample_count: number of equidistant sample points in [0, 1)
    :returns: the maximal circle distance between h(phi_1(g)(x)) and phi_2(g)(h(x))
    """
    words = list(words) if words is not None else list(GENERATOR_WORDS)
    exact = phi_1.exact and phi_2.exact
    residual: Number = Fraction(0) if exact else 0.0
    for word in words:
        source, target = apply(phi_1, word), apply(phi_2, word)
        if exact:
            for i in range(sample_count):
                x = Fraction(i, sample_count)
                distance = circle_distance(h.evaluate(source.evaluate(x)), target.evaluate(h.evaluate(x)))
                residual = max(residual, distance)
        else:
            xs = np.arange(sample_count, dtype=float) / sample_count
            difference = h.evaluate_array(source.evaluate_array(xs)) - target.evaluate_array(h.evaluate_array(xs))
            residual = max(residual, float(np.max(np.abs(difference - np.round(difference)))))
    logger.debug(f"Semi-conjugacy residual over {len(words)} words: {float(residual)}")
    return residual
