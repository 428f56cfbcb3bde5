"""Certificates for actions with rotation triple (1/2, 2/3, 1/5): order relations, Markov intervals, theta."""

import math
from fractions import Fraction

import config
from actions.actions import apply, rotation_of_word
from actions.model import FIVE_FOLD_TRIPLE, CircleAction
from circle_core.lifts import difference_extremes, orbit, translate
from circle_core.model import Composite, LiftHomeo, Number, Rotation
from circle_core.rotation import find_translation_point
from errors import (
    CertificateFailure,
    DensityFailure,
    InequalityFailure,
    MonotonicityFailure,
    PreconditionError,
    WellDefinednessFailure,
)
from group_words.words import enumerate_words
from logging_helper import get_logger
from semiconj.checks import Tolerance
from semiconj.model import ClauseCheck, InequalityReport, MarkovCertificate, MarkovInterval, ThetaMap

logger = get_logger(__name__)

# Period of the lift of alpha*beta on the Markov orbit
PERIOD = 5


def _tolerance(phi: CircleAction, threshold: float | None) -> Tolerance:
    if phi.exact:
        return Tolerance(0.0)
    return Tolerance(config.RELATION_THRESHOLD if threshold is None else threshold)


def lift_ab(phi: CircleAction) -> LiftHomeo:
    """Lift of phi(alpha*beta) with translation number 1/5, that is ab - 1."""
    return translate(apply(phi, "ab"), -1)


def find_x0_case2(phi: CircleAction) -> Number:
    """
    Find a point x0 with (ab - 1)^5(x0) = x0 + 1.

    :raises PreconditionError: if the action does not have the rotation triple (1/2, 2/3, 1/5)
    """
    if (phi.rot_a, phi.rot_b) != FIVE_FOLD_TRIPLE[:2]:
        raise PreconditionError(
            "declared_rotation", f"lifts have translation numbers {phi.rot_a}, {phi.rot_b}, expected 1/2, 2/3"
        )
    rotation = rotation_of_word(phi, "ab", q_max=PERIOD)
    if rotation != FIVE_FOLD_TRIPLE[2]:
        raise PreconditionError("rotation_ab", f"alpha*beta has rotation number {rotation}, expected 1/5")
    tolerance = None if phi.exact else config.RELATION_THRESHOLD
    x0 = find_translation_point(lift_ab(phi), PERIOD, 1, tolerance)
    if x0 is None:
        raise PreconditionError("periodic_point", "the lift of alpha*beta has no point of type 1/5")
    return x0


def markov_orbit(ab: LiftHomeo, x0: Number, first: int, last: int) -> dict[int, Number]:
    """Get o_l = (ab)^l(x0) for first <= l <= last, using o_(l+5) = o_l + 1."""
    base = orbit(ab, x0, PERIOD - 1)
    return {l: base[l % PERIOD] + l // PERIOD for l in range(first, last + 1)}


def verify_lemma_ineq(
    phi: CircleAction, window: int | None = None, threshold: float | None = None
) -> InequalityReport:
    """
    Verify the order relations between the lifts a, b and ab - 1.

    Checks (1) a(x) < b(x) and (2) (ab - 1)^2 a(x) < x + 1 for all x, which is exact on the breakpoint
    partition of exact lifts, and (3) o_l < b(o_(l+2)) - 1 < b^2(o_(l+4)) - 2 < o_(l+1) on the orbit
    o_l = (ab - 1)^l(x0) for |l| <= window.

    :param phi: action with rotation triple (1/2, 2/3, 1/5)
    :param window: orbit window
    :param threshold: residual accepted on the floating backend
    :raises PreconditionError: if the action is not of this type
    :raises InequalityFailure: with the first violated relation
    """
    window = config.WINDOW if window is None else window
    tolerance = _tolerance(phi, threshold)
    x0 = find_x0_case2(phi)
    ab = lift_ab(phi)
    lift_a, lift_b = phi.lift_a, phi.lift_b
    report = InequalityReport(x0=x0, window=window, threshold=tolerance.threshold)

    low, _ = difference_extremes(lift_a, lift_b)
    report.checks.append(tolerance.less("a_below_b", 0, low))
    low, _ = difference_extremes(Composite((ab, ab, lift_a)), Rotation(Fraction(1)))
    report.checks.append(tolerance.less("ab2_a_below_translation", 0, low))

    o = markov_orbit(ab, x0, -window, window + PERIOD - 1)
    for l in range(-window, window + 1):
        chain = (o[l], lift_b.evaluate(o[l + 2]) - 1, lift_b.evaluate(lift_b.evaluate(o[l + 4])) - 2, o[l + 1])
        for i in range(3):
            report.checks.append(tolerance.less(f"orbit_chain_{i + 1}", chain[i], chain[i + 1], index=l))

    for check in report.checks:
        if not check.passed:
            raise InequalityFailure(check.clause, f"margin {float(check.margin)} at {check.index}", witness=check)
    logger.info(f"Order relations of {phi.name} verified on window {window}")
    return report


def check_markov(certificate: MarkovCertificate) -> list[ClauseCheck]:
    """Get the failed clauses of a Markov certificate."""
    return [check for check in certificate.checks if not check.passed]


def build_markov(phi: CircleAction, window: int | None = None, threshold: float | None = None) -> MarkovCertificate:
    """
    Build the intervals I_l = (o_l, b(o_(l+2)) - 1] and J_l = (b(o_(l+2)) - 1, o_(l+1)] and verify their
    Markov property.

    Clauses: b^-1(o_l) in Int J_(l-4), (ba)(o_l) in Int J_(l+5), a(J_l) = I_(l+3), b(I_l) in J_(l+3) and
    b^-1(I_l) in J_(l-4), plus the endpoint identity a(o_l) = b(o_(l+4)) - 1 and I_(l+5) = I_l + 1.

    :param phi: action with rotation triple (1/2, 2/3, 1/5)
    :param window: intervals are built for |l| <= window
    :param threshold: residual accepted on the floating backend
    :raises CertificateFailure: with the violated clause and its index
    """
    window = config.WINDOW if window is None else window
    tolerance = _tolerance(phi, threshold)
    inequalities = verify_lemma_ineq(phi, window, threshold)
    x0 = inequalities.x0
    ab = lift_ab(phi)
    lift_a, lift_b, lift_b_inverse = phi.lift_a, phi.lift_b, phi.lift_b_inverse

    o = markov_orbit(ab, x0, -window - 6, window + 8)
    intervals = {}
    for l in range(-window - 6, window + 7):
        middle = lift_b.evaluate(o[l + 2]) - 1
        intervals[l] = MarkovInterval(l, o[l], middle, middle, o[l + 1])

    def interval_i(l):
        return intervals[l].i_lo, intervals[l].i_hi

    def interval_j(l):
        return intervals[l].j_lo, intervals[l].j_hi

    certificate = MarkovCertificate(
        x0=x0,
        window=window,
        threshold=tolerance.threshold,
        orbit={l: o[l] for l in range(-window, window + 2)},
        intervals={l: intervals[l] for l in range(-window, window + 1)},
    )
    checks = certificate.checks
    for l in range(-window, window + 1):
        checks.append(tolerance.interior("b_inverse_orbit", lift_b_inverse.evaluate(o[l]), interval_j(l - 4), index=l))
        checks.append(
            tolerance.interior("ba_orbit", lift_b.evaluate(lift_a.evaluate(o[l])), interval_j(l + 5), index=l)
        )
        j_lo, j_hi = interval_j(l)
        i_lo, i_hi = interval_i(l + 3)
        checks.append(tolerance.equal("a_J_left", lift_a.evaluate(j_lo), i_lo, index=l))
        checks.append(tolerance.equal("a_J_right", lift_a.evaluate(j_hi), i_hi, index=l))
        i_lo, i_hi = interval_i(l)
        checks.append(
            tolerance.half_open_inclusion(
                "b_I_in_J", (lift_b.evaluate(i_lo), lift_b.evaluate(i_hi)), interval_j(l + 3), index=l
            )
        )
        checks.append(
            tolerance.half_open_inclusion(
                "b_inverse_I_in_J",
                (lift_b_inverse.evaluate(i_lo), lift_b_inverse.evaluate(i_hi)),
                interval_j(l - 4),
                index=l,
            )
        )
        checks.append(
            tolerance.equal("endpoint_identity", lift_a.evaluate(o[l]), lift_b.evaluate(o[l + 4]) - 1, index=l)
        )
        checks.append(tolerance.equal("translation_left", intervals[l + 5].i_lo, intervals[l].i_lo + 1, index=l))
        checks.append(tolerance.equal("translation_right", intervals[l + 5].i_hi, intervals[l].i_hi + 1, index=l))

    failed = check_markov(certificate)
    if failed:
        check = failed[0]
        logger.warning(f"Markov certificate of {phi.name} fails {len(failed)} of {len(checks)} clauses")
        raise CertificateFailure(check.clause, f"margin {float(check.margin)} at l = {check.index}", witness=check)
    logger.info(f"Markov certificate of {phi.name} verified for |l| <= {window}")
    return certificate


def _reduce(p: Number, q: Number) -> tuple[Number, Number]:
    """Move an orbit pair (p, theta(p)) into the fundamental domain p in [0, 1)."""
    shift = math.floor(p)
    return p - shift, q - shift


def _lookup(keys: list[Number], table: dict[Number, Number], x: Number, tolerance: Tolerance) -> Number | None:
    """Tabulated image of an arbitrary point, None if it is not an orbit point of the table."""
    key, value = _reduce(x, 0)
    if tolerance.threshold == 0:
        found = table.get(key)
    else:
        nearest = min(keys, key=lambda k: min(abs(k - key), 1 - abs(k - key)))
        gap = min(abs(nearest - key), 1 - abs(nearest - key))
        found = table[nearest] + round(key - nearest) if gap <= tolerance.threshold else None
    return None if found is None else found - value


def build_theta(
    phi: CircleAction,
    max_syllables: int | None = None,
    threshold: float | None = None,
    max_gap: float | None = None,
) -> ThetaMap:
    """
    Tabulate theta(g(x0)) = g(ab(x0)) on the orbit of x0 under all words up to a syllable bound.

    The table is checked for well-definedness, strict monotonicity and density, residuals of the equivariance
    theta o g = g o theta and of theta^5 = translation by one are measured on table points.

    :param phi: action with a valid Markov certificate
    :param max_syllables: largest word length
    :param threshold: residual accepted for coincident orbit points
    :param max_gap: largest admissible gap between consecutive table points
    :raises WellDefinednessFailure: if coincident orbit points have different images
    :raises MonotonicityFailure: if the tabulated map is not strictly increasing
    :raises DensityFailure: if the orbit does not fill the circle up to max_gap
    :raises CertificateFailure: if a residual exceeds the threshold or is measured on too few table points
    """
    max_syllables = config.MAX_SYLLABLES if max_syllables is None else max_syllables
    max_gap = config.MAX_GAP if max_gap is None else max_gap
    tolerance = Tolerance(0.0) if phi.exact else Tolerance(config.THETA_THRESHOLD if threshold is None else threshold)
    x0 = find_x0_case2(phi)
    x1 = lift_ab(phi).evaluate(x0)

    pairs = [_reduce(x0, x1)]
    for word in enumerate_words(max_syllables):
        lift = apply(phi, word)
        pairs.append(_reduce(lift.evaluate(x0), lift.evaluate(x1)))
    pairs.sort()

    # Coincident orbit points must have the same image
    table: dict[Number, Number] = {}
    points: list[tuple[Number, Number]] = []
    for p, q in pairs:
        if points and abs(p - points[-1][0]) <= tolerance.threshold:
            if abs(q - points[-1][1]) > tolerance.threshold:
                raise WellDefinednessFailure(
                    "well_defined", f"orbit point {float(p)} has images {float(points[-1][1])} and {float(q)}", (p, q)
                )
            continue
        points.append((p, q))
        table[p] = q
    if len(points) > 1 and abs(points[-1][0] - points[0][0] - 1) <= tolerance.threshold:
        points.pop()

    values = [q for _, q in points]
    for i, (left, right) in enumerate(zip(values, values[1:])):
        if not left < right:
            raise MonotonicityFailure("monotone", f"table decreases at {float(points[i][0])}", points[i])
    if not values[-1] < values[0] + 1:
        raise MonotonicityFailure("monotone", "table does not close up within one period", points[-1])

    keys = [p for p, _ in points]
    gaps = [right - left for left, right in zip(keys, keys[1:])] + [keys[0] + 1 - keys[-1]]
    largest_gap = float(max(gaps))
    if largest_gap > max_gap:
        raise DensityFailure("density", f"largest orbit gap {largest_gap} exceeds {max_gap}", largest_gap)

    theta = ThetaMap(
        points=tuple(points),
        max_syllables=max_syllables,
        threshold=tolerance.threshold,
        equivariance_residual=0.0,
        period_residual=0.0,
        extension_residual=0.0,
        max_gap=largest_gap,
        shift_range=(min(q - p for p, q in points), max(q - p for p, q in points)),
    )

    equivariance = extension = period = 0.0
    equivariance_coverage = period_coverage = 0
    generators = (phi.lift_a, phi.lift_b, phi.lift_b_inverse)
    for p, q in points:
        measured = False
        for generator in generators:
            image, expected = generator.evaluate(p), generator.evaluate(q)
            found = _lookup(keys, table, image, tolerance)
            if found is not None:
                measured = True
                equivariance = max(equivariance, float(abs(found - expected)))
            extension = max(extension, float(abs(theta.evaluate(image) - expected)))
        equivariance_coverage += measured

        iterate = p
        for _ in range(PERIOD):
            iterate = _lookup(keys, table, iterate, tolerance)
            if iterate is None:
                break
        if iterate is not None:
            period_coverage += 1
            period = max(period, float(abs(iterate - p - 1)))

    theta.equivariance_residual = equivariance
    theta.extension_residual = extension
    theta.period_residual = period
    theta.equivariance_coverage = equivariance_coverage
    theta.period_coverage = period_coverage

    # Residuals only count if they were measured on enough of the table
    required = max(1, math.ceil(config.THETA_MIN_COVERAGE * len(points)))
    for name, coverage in (("equivariance", equivariance_coverage), ("period", period_coverage)):
        if coverage < required:
            raise CertificateFailure(
                f"{name}_coverage",
                f"{name} measured on {coverage} of {len(points)} table points, at least {required} required",
                coverage,
            )
    for name, residual in (("equivariance", equivariance), ("period", period)):
        if residual > max(tolerance.threshold, config.THETA_THRESHOLD):
            raise CertificateFailure(name, f"residual {residual} exceeds the threshold", residual)
    logger.info(
        f"Theta table of {phi.name} with {len(points)} points, gap {largest_gap:.4g}, "
        f"residuals {equivariance:.3g} / {period:.3g} on {equivariance_coverage} / {period_coverage} points"
    )
    return theta
