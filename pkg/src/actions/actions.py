"""Construction of circle actions, k-fold lifts and rotation triples."""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

import config
from actions.model import (
    FIVE_FOLD_TRIPLE,
    FUCHSIAN_TRIPLE,
    Backend,
    CircleAction,
    RotationTriple,
    RotationValue,
    SemiConjClass,
    SemiConjTag,
)
from circle_core.lifts import (
    compose,
    covering,
    identity,
    is_integer_translation,
    nearest_translation,
    power,
    translate,
    translation_residual,
)
from circle_core.model import Composite, Enclosure, LiftHomeo, Mobius, PiecewiseLinear, Rotation, mod_one
from circle_core.rotation import detect_rational_rotation, translation_number_enclosure
from errors import InvalidK, NoLiftExists, NonExactTriple
from group_words.model import ALPHA, BETA, BETA_INVERSE, Word
from group_words.words import parse
from logging_helper import get_logger

logger = get_logger(__name__)

# Generators of PSL(2, Z) acting by linear fractional transformations
ALPHA_MATRIX = ((0.0, -1.0), (1.0, 0.0))
BETA_MATRIX = ((1.0, 1.0), (-1.0, 0.0))

# The Fuchsian action conjugated by the question-mark function, Farey points become dyadic points
PL_ALPHA_TRANSLATION = Fraction(1, 2)
PL_BETA_POINTS = ((Fraction(0), Fraction(1, 4)), (Fraction(1, 4), Fraction(1, 2)), (Fraction(1, 2), Fraction(1)))


def apply(phi: CircleAction, w: Word | str) -> LiftHomeo:
    """
    Get the lift of phi(w) obtained by substituting the generator lifts along the word.

    The word "ab" yields x -> a(b(x)).

    :param phi: the action
    :param w: normal form word or its text form
    :returns: a `Composite` lift, the identity lift for the empty word
    """
    if isinstance(w, str):
        w = parse(w)
    if w.is_identity:
        return identity()
    substitution = {ALPHA: phi.lift_a, BETA: phi.lift_b, BETA_INVERSE: phi.lift_b_inverse}
    return Composite(tuple(substitution[token] for token in w.tokens))


def fuchsian_O23(backend: Backend | str | None = None) -> CircleAction:
    """
    Get the Fuchsian action of the modular group.

    The Möbius backend uses the matrices of alpha and beta in the boundary chart, the piecewise linear backend
    the conjugate of this action by the question-mark function. Both use lifts with translation numbers 1/2
    and 1/3.

    :param backend: "pl" (exact) or "mobius" (floating)
    """
    backend = Backend(backend or config.BACKEND)
    if backend == Backend.MOBIUS:
        lift_a = Mobius.from_matrix(ALPHA_MATRIX, sheet=1)
        lift_b = Mobius.from_matrix(BETA_MATRIX, sheet=0)
    else:
        lift_a = Rotation(PL_ALPHA_TRANSLATION)
        lift_b = PiecewiseLinear(PL_BETA_POINTS)
    return CircleAction(lift_a, lift_b, Fraction(1, 2), Fraction(1, 3), backend, name="fuchsian")


def _relation_holds(lift: LiftHomeo, order: int, threshold: float) -> bool:
    """Check if lift^order is an integer translation."""
    relation = power(lift, order)
    m, _ = nearest_translation(relation)
    return is_integer_translation(relation, m, threshold)


def lift_offsets(phi: CircleAction, k: int, threshold: float | None = None) -> tuple[list[int], list[int]]:
    """
    Search all offsets j for which x -> (g(kx) + j)/k restores the relations alpha^2 = beta^3 = 1.

    The relations only involve one generator each, so the k^2 offset pairs split into two independent searches.

    :param phi: the covered action
    :param k: degree of the covering
    :param threshold: accepted residual on the floating backend
    :returns: tuple of the admissible offsets for alpha and beta
    """
    threshold = config.RELATION_THRESHOLD if threshold is None else threshold
    offsets_a = [j for j in range(k) if _relation_holds(covering(phi.lift_a, k, j), 2, threshold)]
    offsets_b = [j for j in range(k) if _relation_holds(covering(phi.lift_b, k, j), 3, threshold)]
    logger.debug(f"Admissible {k}-fold lift offsets: alpha {offsets_a}, beta {offsets_b}")
    return offsets_a, offsets_b


def k_fold_lift(phi: CircleAction, k: int, threshold: float | None = None) -> CircleAction:
    """
    Get the unique k-fold lift of an action.

    :param phi: action satisfying alpha^2 = beta^3 = 1
    :param k: degree of the covering, k = 1 or 5 modulo 6
    :returns: the lifted action
    :raises NoLiftExists: if k is not coprime to 6 or the offset search is not conclusive
    """
    if k < 1 or k % 6 not in (1, 5):
        raise NoLiftExists(f"A {k}-fold lift exists only for k = 1 or 5 modulo 6.")
    offsets_a, offsets_b = lift_offsets(phi, k, threshold)
    if len(offsets_a) != 1 or len(offsets_b) != 1:
        raise NoLiftExists(f"Offset search for the {k}-fold lift found {offsets_a} and {offsets_b}.")
    j_a, j_b = offsets_a[0], offsets_b[0]
    return CircleAction(
        covering(phi.lift_a, k, j_a),
        covering(phi.lift_b, k, j_b),
        (phi.rot_a + j_a) / k,
        (phi.rot_b + j_b) / k,
        phi.backend,
        name=f"{phi.name}^({k})",
    )


def rotation_of_word(
    phi: CircleAction, w: Word | str, q_max: int | None = None, n_iters: int | None = None
) -> RotationValue:
    """
    Get the rotation number of phi(w) in [0, 1).

    A periodic point gives the exact value, otherwise a translation number enclosure is returned.
    """
    lift = apply(phi, w)
    tolerance = None if phi.exact else config.RELATION_THRESHOLD
    detected = detect_rational_rotation(lift, q_max, tolerance)
    if detected is not None:
        return detected[0]
    logger.debug(f"No periodic point for {w}, falling back to an enclosure")
    return translation_number_enclosure(lift, n_iters).mod_one()


def rotation_triple(phi: CircleAction, q_max: int | None = None, n_iters: int | None = None) -> RotationTriple:
    """
    Get the rotation triple of an action.

    The rotation numbers of alpha and beta are read from the declared data, the one of alpha*beta is detected.

    :param phi: the action
    :param q_max: largest period searched for alpha*beta
    :param n_iters: iterations of the fallback enclosure
    """
    return RotationTriple(mod_one(phi.rot_a), mod_one(phi.rot_b), rotation_of_word(phi, "ab", q_max, n_iters))


def _elliptic_sheet(matrix: np.ndarray, order: int, numerator: int) -> Mobius:
    """Lift of an elliptic matrix of finite order whose translation number is numerator/order."""
    lift = Mobius.from_matrix(matrix)
    m, _ = nearest_translation(power(lift, order))
    sheet, remainder = divmod(numerator - m, order)
    if remainder != 0:
        raise InvalidK(f"Matrix of order {order} rotates by {m}/{order}, expected {numerator}/{order}.")
    return lift.translate(sheet)


def _rotation_about_i(angle: float) -> np.ndarray:
    """Counterclockwise rotation by the angle about i in the upper half plane."""
    c, s = math.cos(angle / 2), math.sin(angle / 2)
    return np.array([[c, s], [-s, c]])


def triangle_action(k: int) -> CircleAction:
    """
    Get the action of the (2, 3, k) rotation triangle group on the boundary of the hyperbolic plane.

    Alpha rotates by pi about i and beta by 2 pi/3 about a vertex Q = exp(i phi) of a triangle with angles
    pi/2, pi/3 and pi/k. The hyperbolic law of cosines gives cosh d(i, Q) = 2 cos(pi/k)/sqrt(3), hence
    sin(phi) = sqrt(3)/(2 cos(pi/k)).

    :param k: order of alpha*beta, at least 7 and coprime to 6
    :raises InvalidK: for other k
    """
    if k < 7 or k % 6 not in (1, 5):
        raise InvalidK(f"The (2, 3, {k}) triangle action requires k >= 7 and k = 1 or 5 modulo 6.")
    phi = math.pi - math.asin(math.sqrt(3) / (2 * math.cos(math.pi / k)))
    x, y = math.cos(phi), math.sin(phi)
    move = np.array([[math.sqrt(y), x / math.sqrt(y)], [0.0, 1 / math.sqrt(y)]])
    beta = move @ _rotation_about_i(2 * math.pi / 3) @ np.linalg.inv(move)
    lift_a = _elliptic_sheet(_rotation_about_i(math.pi), 2, 1)
    lift_b = _elliptic_sheet(beta, 3, 1)
    return CircleAction(lift_a, lift_b, Fraction(1, 2), Fraction(1, 3), Backend.MOBIUS, name=f"triangle({k})")


def hat_phi(k: int) -> CircleAction:
    """
    Get the triangle action pulled back to Z2 * Z3.

    For k = 5 modulo 6 the automorphism alpha -> alpha, beta -> beta^-1 is applied first, so that the
    rotation numbers of alpha and beta match those of the k-fold lift.

    :raises InvalidK: if k < 7 or k is not coprime to 6
    """
    triangle = triangle_action(k)
    if k % 6 == 1:
        return CircleAction(
            triangle.lift_a, triangle.lift_b, triangle.rot_a, triangle.rot_b, Backend.MOBIUS, name=f"hat_phi({k})"
        )
    return CircleAction(
        triangle.lift_a,
        translate(triangle.lift_b_inverse, 1),
        triangle.rot_a,
        Fraction(2, 3),
        Backend.MOBIUS,
        name=f"hat_phi({k})",
    )


def _exact_entry(entry: RotationValue) -> Fraction:
    if isinstance(entry, Fraction):
        return mod_one(entry)
    if isinstance(entry, Enclosure) and entry.pinned:
        return mod_one(entry.lo)
    raise NonExactTriple(f"Rotation number only known as enclosure [{entry.lo}, {entry.hi}].")


def classify_theorem1(triple: RotationTriple) -> SemiConjClass:
    """
    Classify an action by its rotation triple.

    :param triple: triple with exact entries
    :returns: the Fuchsian class, the class of the 5-fold lift or unclassified
    :raises NonExactTriple: if an entry is an enclosure which does not pin a value
    """
    values = tuple(_exact_entry(entry) for entry in triple.entries)
    if values == FUCHSIAN_TRIPLE:
        return SemiConjClass(SemiConjTag.FUCHSIAN_O23, values)
    if values == FIVE_FOLD_TRIPLE:
        return SemiConjClass(SemiConjTag.FIVE_FOLD_LIFT, values)
    return SemiConjClass(SemiConjTag.UNCLASSIFIED, values)


def relation_residuals(phi: CircleAction) -> tuple[float, float]:
    """
    Get the residuals of a^2 and b^3 from the integer translations 2 rot(a) and 3 rot(b).

    Exact lifts have residual 0 if the relations hold.
    """
    residual_a = translation_residual(power(phi.lift_a, 2), round(2 * phi.rot_a))
    residual_b = translation_residual(power(phi.lift_b, 3), round(3 * phi.rot_b))
    return float(residual_a), float(residual_b)


@dataclass(frozen=True)
class ActionCheck:
    """Result of the validation of an action."""

    residual_a: float
    residual_b: float
    detected_a: Fraction | None
    detected_b: Fraction | None
    valid: bool


def validate_action(phi: CircleAction, q_max: int = 3, threshold: float | None = None) -> ActionCheck:
    """
    Check the relations and the declared rotation numbers of an action.

    :param phi: the action
    :param q_max: largest period searched for the generators
    :param threshold: accepted relation residual on the floating backend
    """
    threshold = config.RELATION_THRESHOLD if threshold is None else threshold
    residual_a, residual_b = relation_residuals(phi)
    tolerance = None if phi.exact else threshold
    detected_a = detect_rational_rotation(phi.lift_a, q_max, tolerance)
    detected_b = detect_rational_rotation(phi.lift_b, q_max, tolerance)
    detected_a = None if detected_a is None else detected_a[0]
    detected_b = None if detected_b is None else detected_b[0]
    limit = 0 if phi.exact else threshold
    valid = (
        residual_a <= limit
        and residual_b <= limit
        and detected_a == mod_one(phi.rot_a)
        and detected_b == mod_one(phi.rot_b)
    )
    if not valid:
        logger.warning(f"Action {phi.name} violates its invariants: residuals {residual_a}, {residual_b}")
    return ActionCheck(residual_a, residual_b, detected_a, detected_b, valid)


def conjugate_action(phi: CircleAction, h: LiftHomeo) -> CircleAction:
    """
    Get the action h o phi o h^-1.

    Conjugation preserves translation numbers, so the declared data is kept.
    """
    h_inverse = h.inverse()
    lift_a = compose(h, compose(phi.lift_a, h_inverse))
    lift_b = compose(h, compose(phi.lift_b, h_inverse))
    backend = Backend.PL if lift_a.exact and lift_b.exact else Backend.MOBIUS
    return CircleAction(lift_a, lift_b, phi.rot_a, phi.rot_b, backend, name=f"conjugate({phi.name})")


def involution_lift(branch: list[tuple[Fraction, Fraction]]) -> PiecewiseLinear:
    """
    Get the lift a with a^2 = translation by one which extends an increasing branch [1/3, 1] -> [1, 4/3].

    On [0, 1/3] the lift is determined by the relation as a(z) = h^-1(z + 1).

    :param branch: breakpoints (x, h(x)) of the branch including (1/3, 1) and (1, 4/3)
    :raises MalformedLift: if the branch does not define an increasing lift
    """
    one_third = Fraction(1, 3)
    points = [(x, y) for x, y in branch if x < 1]
    points.extend((y - 1, x) for x, y in branch if y < 1 + one_third)
    return PiecewiseLinear.from_points(points)
