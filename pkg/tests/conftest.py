"""Pytest configuration and shared actions."""

from fractions import Fraction

import pytest

from actions.actions import conjugate_action, fuchsian_O23, k_fold_lift
from actions.model import Backend
from circle_core.model import PiecewiseLinear

# A rational piecewise linear homeomorphism used to move actions inside their conjugacy class
CONJUGATOR = PiecewiseLinear(
    ((Fraction(0), Fraction(1, 12)), (Fraction(1, 3), Fraction(1, 4)), (Fraction(3, 4), Fraction(5, 6)))
)


@pytest.fixture(scope="session")
def fuchsian_pl():
    """Exact piecewise linear model of the Fuchsian action."""
    return fuchsian_O23(Backend.PL)


@pytest.fixture(scope="session")
def fuchsian_mobius():
    """Floating Möbius model of the Fuchsian action."""
    return fuchsian_O23(Backend.MOBIUS)


@pytest.fixture(scope="session")
def five_fold(fuchsian_pl):
    """Exact 5-fold lift of the Fuchsian action."""
    return k_fold_lift(fuchsian_pl, 5)


@pytest.fixture(scope="session")
def conjugated_five_fold(five_fold):
    """The 5-fold lift conjugated by a rational piecewise linear homeomorphism."""
    return conjugate_action(five_fold, CONJUGATOR)


@pytest.fixture(scope="session")
def mobius_five_fold(fuchsian_mobius):
    """Floating 5-fold lift of the Möbius Fuchsian action."""
    return k_fold_lift(fuchsian_mobius, 5)
