"""Certificates for actions with rotation triple (1/2, 1/3, 0)."""

import math
from fractions import Fraction

import config
from actions.actions import apply, conjugate_action, involution_lift, rotation_triple
from actions.model import FUCHSIAN_TRIPLE, Backend, CircleAction
from circle_core.lifts import difference_extremes, flatten, identity
from circle_core.model import Number, PiecewiseLinear
from circle_core.rotation import detect_rational_rotation, find_translation_point
from errors import CertificateFailure, NormalizationFailure, NoSolution, PreconditionError
from group_words.model import ConjTag
from group_words.words import classify_conjugacy, enumerate_words
from logging_helper import get_logger
from semiconj.checks import Tolerance
from semiconj.model import Case1Certificate, WordVerdict

logger = get_logger(__name__)

ONE_THIRD = Fraction(1, 3)

# Rotation numbers of the torsion classes
TORSION_ROTATION = {
    (ConjTag.IDENTITY, None): Fraction(0),
    (ConjTag.POWER_OF_ALPHA, None): Fraction(1, 2),
    (ConjTag.POWER_OF_BETA, 1): Fraction(1, 3),
    (ConjTag.POWER_OF_BETA, 2): Fraction(2, 3),
}


def _tolerance(phi: CircleAction, threshold: float | None) -> Tolerance:
    if phi.exact:
        return Tolerance(0.0)
    return Tolerance(config.RELATION_THRESHOLD if threshold is None else threshold)


def find_x0_case1(phi: CircleAction) -> Number:
    """
    Find a point x0 with (ab)(x0) = x0 + 1.

    :param phi: action with rotation triple (1/2, 1/3, 0) and lifts with translation numbers 1/2 and 1/3
    :returns: x0 in [0, 1), exact for exact actions
    :raises NoSolution: if no such point exists, the action then has a different triple
    """
    tolerance = None if phi.exact else config.RELATION_THRESHOLD
    x0 = find_translation_point(apply(phi, "ab"), 1, 1, tolerance)
    if x0 is None:
        raise NoSolution("The lift of alpha*beta has no point x with ab(x) = x + 1.")
    logger.debug(f"Found x0 = {x0}")
    return x0


def _require_case1(phi: CircleAction) -> Number:
    if (phi.rot_a, phi.rot_b) != FUCHSIAN_TRIPLE[:2]:
        raise PreconditionError(
            "declared_rotation", f"lifts have translation numbers {phi.rot_a}, {phi.rot_b}, expected 1/2, 1/3"
        )
    try:
        return find_x0_case1(phi)
    except NoSolution as error:
        raise PreconditionError("fixed_point", str(error)) from error


def certify_case1(
    phi: CircleAction,
    max_syllables: int | None = None,
    threshold: float | None = None,
    cross_check: int = 50,
) -> Case1Certificate:
    """
    Certify rot(phi(g)) = rot(phi_Fuchsian(g)) for all words up to a syllable bound.

    With I = [x0, b(x0)] and J = [b(x0), x0 + 1] the generators satisfy a(J) = I and b^(+-1)(I) in J.
    Hyperbolic words are conjugated to a word starting with alpha and certified by g(I) in I, torsion
    words get the rotation number of their class.

    :param phi: action with rotation triple (1/2, 1/3, 0)
    :param max_syllables: largest word length
    :param threshold: residual accepted on the floating backend
    :param cross_check: number of trapped words whose rotation number is also detected by a periodic point
    :raises PreconditionError: if the action does not have the required lifts or fixed point
    :raises CertificateFailure: naming the first violated inclusion
    """
    max_syllables = config.MAX_SYLLABLES if max_syllables is None else max_syllables
    tolerance = _tolerance(phi, threshold)
    x0 = _require_case1(phi)
    lift_a, lift_b, lift_b_inverse = phi.lift_a, phi.lift_b, phi.lift_b_inverse
    bx0 = lift_b.evaluate(x0)
    arc_i, arc_j = (x0, bx0), (bx0, x0 + 1)

    chain = (x0, lift_a.evaluate(x0), lift_b.evaluate(bx0), x0 + 1)
    certificate = Case1Certificate(
        x0=x0,
        arc_i=arc_i,
        arc_j=arc_j,
        chain=chain,
        threshold=tolerance.threshold,
        max_syllables=max_syllables,
    )
    checks = certificate.generator_checks
    checks.append(tolerance.less("chain_x0_a", x0, chain[1]))
    checks.append(tolerance.equal("chain_a_equals_b", chain[1], bx0))
    checks.append(tolerance.less("chain_b_b2", bx0, chain[2]))
    checks.append(tolerance.less("chain_b2_x0", chain[2], x0 + 1))
    checks.append(tolerance.equal("alpha_J_left", lift_a.evaluate(arc_j[0]), arc_i[0] + 1))
    checks.append(tolerance.equal("alpha_J_right", lift_a.evaluate(arc_j[1]), arc_i[1] + 1))
    checks.append(
        tolerance.interval_inclusion("beta_I_in_J", (lift_b.evaluate(arc_i[0]), lift_b.evaluate(arc_i[1])), arc_j)
    )
    checks.append(
        tolerance.interval_inclusion(
            "beta_inverse_I_in_J", (lift_b_inverse.evaluate(arc_i[0]), lift_b_inverse.evaluate(arc_i[1])), arc_j
        )
    )
    for check in checks:
        if not check.passed:
            raise CertificateFailure(check.clause, f"margin {float(check.margin)}", witness=check)

    for word in enumerate_words(max_syllables):
        conjugacy = classify_conjugacy(word)
        if conjugacy.tag != ConjTag.HYPERBOLIC:
            rotation = TORSION_ROTATION[(conjugacy.tag, conjugacy.exponent)]
            certificate.word_verdicts.append(WordVerdict(word.text, str(conjugacy), rotation, "torsion"))
            continue

        # The canonical cyclic word starts with alpha
        lift = apply(phi, conjugacy.cyclic)
        check = tolerance.interval_inclusion(
            "trapping", (lift.evaluate(arc_i[0]), lift.evaluate(arc_i[1])), arc_i, word=word.text
        )
        if not check.passed:
            raise CertificateFailure(
                "trapping", f"word {word.text} does not map I into I, margin {float(check.margin)}", witness=check
            )
        certificate.word_verdicts.append(
            WordVerdict(word.text, str(conjugacy), Fraction(0), "trapped", check.margin)
        )

        if certificate.cross_checked < cross_check:
            detected = detect_rational_rotation(apply(phi, word), 1, None if phi.exact else tolerance.threshold)
            if detected is None or detected[0] != 0:
                raise CertificateFailure("cross_check", f"word {word.text} has no fixed point", witness=word.text)
            certificate.cross_checked += 1

    logger.info(
        f"Case 1 certificate for {phi.name} passed: {len(certificate.word_verdicts)} words up to "
        f"{max_syllables} syllables, {certificate.cross_checked} cross-checked"
    )
    return certificate


def _normalizing_conjugator(lift_b: PiecewiseLinear, x0: Fraction) -> PiecewiseLinear:
    """
    Piecewise linear h with h(x0) = 0 and h o b = R_(1/3) o h.

    h maps [x0, b(x0)] linearly onto [0, 1/3] and is extended along the orbit of this interval under b.
    """
    lift_b_inverse = lift_b.inverse()
    bx0 = lift_b.evaluate(x0)
    scale = ONE_THIRD / (bx0 - x0)

    def h(y: Fraction) -> Fraction:
        steps = 0
        while y > bx0:
            y, steps = lift_b_inverse.evaluate(y), steps + 1
        return (y - x0) * scale + steps * ONE_THIRD

    candidates = {x0, bx0, lift_b.evaluate(bx0)}
    for c in lift_b.xs:
        candidates.update((lift_b.evaluate(c), lift_b.evaluate(lift_b.evaluate(c))))
    points = []
    for y in candidates:
        y = y - math.floor(y - x0)
        points.append((y, h(y)))
    return PiecewiseLinear.from_points(points)


def normalize_case1(phi: CircleAction) -> tuple[CircleAction, PiecewiseLinear]:
    """
    Conjugate an exact action into normal position.

    In normal position beta acts by the rotation by 1/3 and the lifts satisfy a(1/3) = 1 and (ab)(0) = 1.

    :param phi: exact action with rotation triple (1/2, 1/3, 0)
    :returns: tuple of the normalized action and the conjugator h
    :raises NormalizationFailure: for floating actions or if the normalization does not succeed
    """
    if not phi.exact:
        raise NormalizationFailure("Only exact actions can be normalized.")
    try:
        x0 = _require_case1(phi)
    except PreconditionError as error:
        raise NormalizationFailure(str(error)) from error

    h = _normalizing_conjugator(flatten(phi.lift_b), x0)
    conjugated = conjugate_action(phi, h)
    low, high = difference_extremes(identity(), conjugated.lift_b)
    if low != ONE_THIRD or high != ONE_THIRD or conjugated.lift_a.evaluate(ONE_THIRD) != 1:
        raise NormalizationFailure(f"Conjugated action is not in normal position: b - id in [{low}, {high}].")
    normalized = CircleAction(
        flatten(conjugated.lift_a),
        PiecewiseLinear(((Fraction(0), ONE_THIRD),)),
        phi.rot_a,
        phi.rot_b,
        Backend.PL,
        name=f"normalized({phi.name})",
    )
    return normalized, h


def _branch(lift_a: PiecewiseLinear, xs: set[Fraction]) -> dict[Fraction, Fraction]:
    return {x: lift_a.evaluate(x) for x in xs}


def path_witness(phi_0: CircleAction, phi_1: CircleAction, steps: int = 16) -> list[CircleAction]:
    """
    Connect two actions with rotation triple (1/2, 1/3, 0) by a path of actions with the same triple.

    Both actions are normalized, then the branches of the alpha lifts on [1/3, 1] are interpolated linearly
    and extended by the relation a^2 = translation by one.

    :param phi_0: start of the path
    :param phi_1: end of the path
    :param steps: number of actions on the path, at least 2
    :returns: the actions along the path, starting at the normalized phi_0
    :raises PreconditionError: if an endpoint does not have the rotation triple (1/2, 1/3, 0)
    :raises NormalizationFailure: if an endpoint cannot be normalized
    :raises CertificateFailure: if an intermediate action does not have the triple
    """
    if steps < 2:
        raise ValueError("A path needs at least two steps.")
    for name, phi in (("start", phi_0), ("end", phi_1)):
        triple = rotation_triple(phi)
        if triple.entries != FUCHSIAN_TRIPLE:
            raise PreconditionError("path_endpoint", f"{name} has rotation triple {triple}")

    normalized_0, _ = normalize_case1(phi_0)
    normalized_1, _ = normalize_case1(phi_1)
    lift_0, lift_1 = normalized_0.lift_a, normalized_1.lift_a
    xs = {x for x in lift_0.xs + lift_1.xs if ONE_THIRD < x < 1}
    xs.update({ONE_THIRD, Fraction(1)})
    branch_0, branch_1 = _branch(lift_0, xs), _branch(lift_1, xs)

    path = []
    for i in range(steps):
        t = Fraction(i, steps - 1)
        branch = sorted((x, (1 - t) * branch_0[x] + t * branch_1[x]) for x in xs)
        phi_t = CircleAction(
            involution_lift(branch),
            normalized_0.lift_b,
            Fraction(1, 2),
            ONE_THIRD,
            Backend.PL,
            name=f"path({i}/{steps - 1})",
        )
        triple = rotation_triple(phi_t)
        if triple.entries != FUCHSIAN_TRIPLE:
            raise CertificateFailure("path_step", f"step {i} has rotation triple {triple}", witness=i)
        path.append(phi_t)
    logger.info(f"Path of {steps} actions verified with rotation triple {FUCHSIAN_TRIPLE}")
    return path

