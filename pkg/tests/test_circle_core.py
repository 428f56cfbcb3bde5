"""Tests for lifts, their composition and certified translation numbers."""

from fractions import Fraction

import numpy as np
import pytest

from actions.actions import ALPHA_MATRIX, BETA_MATRIX
from circle_core.lifts import (
    compose,
    covering,
    difference_extremes,
    flatten,
    identity,
    is_integer_translation,
    nearest_translation,
    orbit,
    power,
    translate,
    translation_residual,
)
from circle_core.model import (
    Composite,
    Covering,
    Enclosure,
    Mobius,
    PiecewiseLinear,
    Rotation,
    chart_inverse,
    mod_one,
)
from circle_core.rotation import detect_rational_rotation, find_translation_point, translation_number_enclosure
from errors import MalformedLift

F = Fraction

HOMEO = PiecewiseLinear(((F(0), F(1, 8)), (F(1, 4), F(1, 2)), (F(1, 2), F(5, 8)), (F(5, 6), F(1))))


def planted(rotation: Fraction, h: PiecewiseLinear = HOMEO):
    """Conjugate of the rotation by h, its translation number is the rotation."""
    return compose(h, compose(Rotation(rotation), h.inverse()))


def random_pl(rng: np.random.Generator, breakpoints: int = 5, denominator: int = 24) -> PiecewiseLinear:
    inner = sorted(rng.choice(np.arange(1, denominator), breakpoints - 1, replace=False))
    values = sorted(rng.choice(np.arange(0, denominator), breakpoints, replace=False))
    xs = [F(0)] + [F(int(i), denominator) for i in inner]
    ys = [F(int(i), denominator) for i in values]
    return PiecewiseLinear(tuple(zip(xs, ys)))


def test_mod_one():
    """Test reduction into [0, 1)."""
    assert mod_one(F(7, 3)) == F(1, 3)
    assert mod_one(F(-1, 4)) == F(3, 4)
    assert mod_one(-2.5) == 0.5


def test_chart_inverse():
    """Test circle points of chart values."""
    assert chart_inverse(0.0) == 0.5
    assert chart_inverse(1.0) == pytest.approx(0.75)
    assert chart_inverse(-1.0) == pytest.approx(0.25)
    assert chart_inverse(float("inf")) == 0.0


@pytest.mark.parametrize(
    "mat, expected",
    [
        ((2.0, 0.0, 0.0, 0.5), [0.0, 0.5]),
        ((1.0, 1.0, 0.0, 1.0), [0.0]),
        ((1.0, 0.0, 1.0, 1.0), [0.5]),
        ((0.0, -1.0, 1.0, 0.0), []),
    ],
)
def test_mobius_fixed_points(mat: tuple, expected: list):
    """Test fixed points of hyperbolic, parabolic and elliptic matrices."""
    lift = Mobius(mat)
    assert lift.fixed_points() == pytest.approx(expected, abs=1e-7)
    for x in lift.fixed_points():
        assert mod_one(lift.evaluate(x) + 1e-12) == pytest.approx(x, abs=1e-9)


@pytest.mark.parametrize(
    "points",
    [
        (),
        ((F(0), F(1, 2)), (F(1, 2), F(1, 4))),
        ((F(0), F(0)), (F(1, 2), F(3, 2))),
        ((F(1, 2), F(0)), (F(1, 4), F(1, 2))),
        ((F(0), F(0)), (F(1), F(1, 2))),
    ],
)
def test_pl_invalid(points):
    """Test that non-monotone or malformed breakpoint lists are rejected."""
    with pytest.raises(MalformedLift):
        PiecewiseLinear(points)


def test_pl_evaluate():
    """Test evaluation, periodicity and inverse of a piecewise linear lift."""
    assert HOMEO.evaluate(F(1, 8)) == F(5, 16)
    assert HOMEO.evaluate(F(9, 8)) == F(21, 16)
    assert HOMEO.evaluate(F(-7, 8)) == F(-11, 16)
    inverse = HOMEO.inverse()
    for i in range(-12, 13):
        x = F(i, 7)
        assert inverse.evaluate(HOMEO.evaluate(x)) == x
    xs = np.linspace(-1.0, 2.0, 31)
    assert np.allclose(HOMEO.evaluate_array(xs), [float(HOMEO.evaluate(F(x))) for x in xs])


def test_pl_from_points():
    """Test that breakpoints outside [0, 1) are moved into one period."""
    lift = PiecewiseLinear.from_points([(F(5, 4), F(7, 4)), (F(1, 2), F(1))])
    assert lift.points == ((F(1, 4), F(3, 4)), (F(1, 2), F(1)))
    assert lift.evaluate(F(5, 4)) == F(7, 4)


def test_compose_closed_forms():
    """Test that compositions of exact lifts are piecewise linear and agree with sequential evaluation."""
    f = compose(HOMEO, Rotation(F(1, 3)))
    assert isinstance(f, PiecewiseLinear)
    for i in range(10):
        x = F(i, 10)
        assert f.evaluate(x) == HOMEO.evaluate(x + F(1, 3))
    assert compose(Rotation(F(1, 3)), Rotation(F(1, 6))) == Rotation(F(1, 2))
    assert compose(Rotation(F(2)), HOMEO) == HOMEO.translate(2)


def test_compose_mixed():
    """Test that compositions without closed form are kept as composite."""
    lift = Mobius.from_matrix(BETA_MATRIX)
    composite = compose(HOMEO, lift)
    assert isinstance(composite, Composite)
    assert composite.evaluate(0.3) == pytest.approx(HOMEO.evaluate(F(lift.evaluate(0.3))))
    assert composite.inverse().evaluate(composite.evaluate(0.3)) == pytest.approx(0.3)


def test_power_and_flatten():
    """Test iterates of a lift."""
    assert power(Rotation(F(1, 3)), 3) == Rotation(F(1))
    assert power(HOMEO, -1).evaluate(HOMEO.evaluate(F(2, 9))) == F(2, 9)
    composite = Composite((HOMEO, Rotation(F(1, 5)), HOMEO.inverse()))
    flat = flatten(composite)
    assert isinstance(flat, PiecewiseLinear)
    expected = planted(F(1, 5))
    for i in range(13):
        assert flat.evaluate(F(i, 13)) == expected.evaluate(F(i, 13))
    assert translate(HOMEO, 3).evaluate(0) == F(1, 8) + 3


def test_mobius_generators():
    """Test that the boundary lifts of alpha and beta have translation numbers 1/2 and 1/3."""
    alpha = Mobius.from_matrix(ALPHA_MATRIX, sheet=1)
    beta = Mobius.from_matrix(BETA_MATRIX)
    for x in (0.1, 0.25, 0.5, 0.9):
        assert alpha.evaluate(x) == pytest.approx(x + 0.5)
    assert beta.evaluate(0.5) == pytest.approx(1.0)
    assert is_integer_translation(power(alpha, 2), 1, threshold=1e-9)
    assert is_integer_translation(power(beta, 3), 1, threshold=1e-9)
    assert beta.inverse().evaluate(beta.evaluate(0.3)) == pytest.approx(0.3)


def test_mobius_invalid():
    """Test that orientation reversing matrices are rejected."""
    with pytest.raises(MalformedLift):
        Mobius((1.0, 0.0, 0.0, -1.0))


def test_mobius_compose():
    """Test that the product matrix gives the composed lift."""
    alpha = Mobius.from_matrix(ALPHA_MATRIX, sheet=1)
    beta = Mobius.from_matrix(BETA_MATRIX)
    product = compose(alpha, beta)
    assert isinstance(product, Mobius)
    for x in (0.0, 0.2, 0.7):
        assert product.evaluate(x) == pytest.approx(alpha.evaluate(beta.evaluate(x)))


def test_covering():
    """Test k-fold lifts of lifts."""
    assert covering(Rotation(F(1, 2)), 5, 2) == Rotation(F(1, 2))
    lift = covering(HOMEO, 3, 1)
    assert isinstance(lift, PiecewiseLinear)
    for i in range(12):
        x = F(i, 12)
        assert lift.evaluate(x) == (HOMEO.evaluate(3 * x) + 1) / 3
    floating = covering(Mobius.from_matrix(BETA_MATRIX), 5, 3)
    assert isinstance(floating, Covering)
    assert floating.inverse().evaluate(floating.evaluate(0.41)) == pytest.approx(0.41)
    with pytest.raises(MalformedLift):
        Covering(HOMEO, 0)


def test_difference_extremes():
    """Test the extremes of the difference of two lifts."""
    assert difference_extremes(identity(), Rotation(F(1, 3))) == (F(1, 3), F(1, 3))
    low, high = difference_extremes(identity(), HOMEO)
    assert (low, high) == (F(1, 8), F(1, 4))
    assert translation_residual(Rotation(F(1)), 1) == 0
    assert nearest_translation(HOMEO) == (0, F(1, 4))


def test_orbit():
    """Test forward and backward orbits."""
    assert orbit(Rotation(F(1, 4)), F(0), 3) == [0, F(1, 4), F(1, 2), F(3, 4)]
    assert orbit(Rotation(F(1, 4)), F(0), -2) == [0, F(-1, 4), F(-1, 2)]


def test_enclosure():
    """Test enclosure helpers."""
    enclosure = Enclosure(F(5, 4), F(4, 3))
    assert enclosure.width == F(1, 12)
    assert enclosure.contains(F(13, 10))
    assert enclosure.mod_one() == Enclosure(F(1, 4), F(1, 3))
    assert not enclosure.pinned
    with pytest.raises(ValueError):
        Enclosure(F(1), F(0))


def test_enclosure_rotation():
    """Test that rigid rotations give pinned enclosures."""
    enclosure = translation_number_enclosure(Rotation(F(2, 7)))
    assert enclosure.pinned
    assert enclosure.lo == F(2, 7)


@pytest.mark.parametrize("rotation", [F(0), F(1, 2), F(1, 3), F(2, 5), F(3, 7), F(5, 12), F(7, 3)])
def test_enclosure_planted(rotation: Fraction):
    """Test that enclosures of conjugated rotations contain the planted value."""
    n = 2000
    enclosure = translation_number_enclosure(planted(rotation), n)
    assert enclosure.contains(rotation)
    assert enclosure.width <= F(2, n)


def test_enclosure_mobius():
    """Test enclosures of floating lifts."""
    beta = Mobius.from_matrix(BETA_MATRIX)
    enclosure = translation_number_enclosure(beta, 1000)
    assert enclosure.contains(F(1, 3))
    assert enclosure.width <= F(2, 1000)


def test_enclosure_invalid():
    """Test that the iteration count must be positive."""
    with pytest.raises(ValueError):
        translation_number_enclosure(HOMEO, 0)


def test_enclosure_property_random():
    """Test soundness on seeded random conjugates of rational rotations."""
    rng = np.random.default_rng(2024)
    n = 1000
    for _ in range(40):
        q = int(rng.integers(1, 13))
        p = int(rng.integers(0, 3 * q))
        rotation = F(p, q)
        f = planted(rotation, random_pl(rng))
        enclosure = translation_number_enclosure(f, n)
        assert enclosure.contains(rotation)
        assert enclosure.width <= F(2, n)
        detected, witness = detect_rational_rotation(f, 12)
        assert detected == mod_one(rotation)
        assert power(f, rotation.denominator).evaluate(witness) == witness + rotation.numerator


@pytest.mark.parametrize("rotation", [F(1, 2), F(1, 3), F(2, 5), F(3, 7), F(11, 30)])
def test_detect_planted(rotation: Fraction):
    """Test that planted rational rotation numbers are recovered with a periodic witness."""
    f = planted(rotation)
    detected, witness = detect_rational_rotation(f, 30)
    assert detected == rotation
    assert power(f, rotation.denominator).evaluate(witness) == witness + rotation.numerator


def test_detect_none():
    """Test that rotations with larger period are not detected."""
    assert detect_rational_rotation(planted(F(1, 7)), 5) is None
    with pytest.raises(ValueError):
        detect_rational_rotation(HOMEO, 0)


def test_find_translation_point():
    """Test periodic points of exact and floating lifts."""
    f = planted(F(2, 5))
    x = find_translation_point(f, 5, 2)
    assert power(f, 5).evaluate(x) == x + 2
    assert find_translation_point(f, 1, 0) is None
    assert find_translation_point(Rotation(F(1, 3)), 3, 1) == 0
    assert find_translation_point(Rotation(F(1, 3)), 2, 1) is None
    beta = Mobius.from_matrix(BETA_MATRIX)
    x = find_translation_point(beta, 3, 1, 1e-9)
    assert power(beta, 3).evaluate(x) == pytest.approx(x + 1, abs=1e-9)
    with pytest.raises(ValueError):
        find_translation_point(f, 0, 0)


def test_find_translation_point_sign_change():
    """Test that floating fixed points off the sampling grid are located by bracketing."""
    shift = Rotation(0.1)
    f = Composite((shift, Mobius((2.0, 0.0, 0.0, 0.5)), shift.inverse()))
    x = find_translation_point(f, 1, 0, 1e-12)
    assert x is not None
    assert min(abs(x - 0.1), abs(x - 0.6)) <= 1e-12
    assert abs(f.evaluate(x) - x) <= 1e-12


def test_find_translation_point_tangential():
    """Test that a parabolic fixed point without sign change is located by minimisation."""
    shift = Rotation(0.3)
    f = Composite((shift, Mobius((1.0, 1.0, 0.0, 1.0)), shift.inverse()))
    x = find_translation_point(f, 1, 0, 1e-9)
    assert x is not None
    assert abs(x - 0.3) <= 1e-3
    assert abs(f.evaluate(x) - x) <= 1e-9


DEGREE_ONE_LIFTS = {
    "pl": HOMEO,
    "planted": planted(F(2, 5)),
    "rotation": Rotation(F(1, 3)),
    "mobius_alpha": Mobius.from_matrix(ALPHA_MATRIX, sheet=1),
    "mobius_beta": Mobius.from_matrix(BETA_MATRIX),
    "covering": covering(Mobius.from_matrix(BETA_MATRIX), 5, 3),
    "composite": Composite((HOMEO, Mobius.from_matrix(BETA_MATRIX), Rotation(0.25))),
}


@pytest.mark.parametrize("name", DEGREE_ONE_LIFTS)
def test_degree_one_monotone(name: str):
    """Test F(x + 1) = F(x) + 1 and strict monotonicity on random pairs of points."""
    lift = DEGREE_ONE_LIFTS[name]
    rng = np.random.default_rng(17)
    for _ in range(300):
        x, y = sorted(float(v) for v in rng.uniform(-3, 3, size=2))
        if y - x < 1e-4:
            continue
        if lift.exact:
            x, y = F(x).limit_denominator(10**6), F(y).limit_denominator(10**6)
            assert lift.evaluate(x + 1) == lift.evaluate(x) + 1
        else:
            assert lift.evaluate(x + 1) == pytest.approx(lift.evaluate(x) + 1, abs=1e-12)
        assert lift.evaluate(x) < lift.evaluate(y)


def test_enclosure_conjugation_invariant():
    """Test that enclosures of a lift and of its conjugates by random piecewise linear maps overlap."""
    rng = np.random.default_rng(31)
    n = 1000
    for _ in range(30):
        f, h = random_pl(rng), random_pl(rng)
        conjugate = compose(h, compose(f, h.inverse()))
        enclosure, conjugated = translation_number_enclosure(f, n), translation_number_enclosure(conjugate, n)
        assert max(enclosure.lo, conjugated.lo) <= min(enclosure.hi, conjugated.hi)
        assert conjugated.width <= F(2, n)


@pytest.mark.slow
def test_enclosure_full_scale():
    """Test enclosures and periodic points of 1000 random conjugates of rational rotations with q <= 30."""
    rng = np.random.default_rng(1000)
    n = 10**4
    for _ in range(1000):
        q = int(rng.integers(1, 31))
        p = int(rng.integers(0, 3 * q))
        rotation = F(p, q)
        f = planted(rotation, random_pl(rng))
        enclosure = translation_number_enclosure(f, n)
        assert enclosure.contains(rotation)
        assert enclosure.width <= F(2, n)
        detected, witness = detect_rational_rotation(f, 30)
        assert detected == mod_one(rotation)
        assert power(f, rotation.denominator).evaluate(witness) == witness + rotation.numerator
