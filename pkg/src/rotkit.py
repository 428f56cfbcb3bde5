"""Command line entry point of rotkit."""

import argparse
import sys
import time
from collections.abc import Sequence

from pydantic import ValidationError

import config as defaults
from actions.actions import (
    apply,
    classify_theorem1,
    fuchsian_O23,
    hat_phi,
    k_fold_lift,
    rotation_of_word,
    rotation_triple,
)
from actions.files import action_to_schema, dump_action, load_action
from actions.model import FIVE_FOLD_TRIPLE, FUCHSIAN_TRIPLE, Backend, CircleAction, RotationTriple, RotationValue
from actions.random_actions import random_action
from circle_core.lifts import nearest_translation
from circle_core.model import Enclosure
from errors import CertificateFailure, NonExactTriple, RotkitError
from group_words.words import classify_conjugacy, parse, power
from logging_helper import get_logger
from schema import (
    Case1Result,
    Case2Result,
    ClauseReport,
    CommandResult,
    CounterexampleResult,
    Failure,
    IntervalReport,
    PathResult,
    RandomResult,
    Report,
    RotationEntry,
    RotResult,
    RunConfig,
    ThetaReport,
    TripleResult,
    WordVerdictReport,
    rational_text,
)
from semiconj.case1 import certify_case1, path_witness
from semiconj.case2 import build_markov, build_theta, verify_lemma_ineq

logger = get_logger(__name__)

# Distance from the identity that separates the k-fold lift from the triangle action
SEPARATION_MARGIN = 0.01

EXIT_PASS = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def rotation_entry(value: RotationValue) -> RotationEntry:
    """Describe an exact rotation number or an enclosure."""
    if isinstance(value, Enclosure):
        return RotationEntry(exact=value.pinned, lo=str(value.lo), hi=str(value.hi))
    return RotationEntry(exact=True, value=str(value))


def triple_entries(triple: RotationTriple) -> list[RotationEntry]:
    return [rotation_entry(entry) for entry in triple.entries]


def resolve_action(run: RunConfig) -> CircleAction:
    """
    Build the action selected by --action, --triangle or --fuchsian and apply --lift.

    The Fuchsian action is used if no other source is given.
    """
    if run.action is not None:
        phi = load_action(run.action, run.threshold)
    elif run.triangle is not None:
        phi = hat_phi(run.triangle)
    else:
        phi = fuchsian_O23(run.backend)
    if run.lift is not None and run.lift != 1:
        phi = k_fold_lift(phi, run.lift, run.threshold)
    return phi


def cmd_triple(run: RunConfig) -> tuple[TripleResult, bool]:
    """Compute the rotation triple of an action and its semi-conjugacy class."""
    phi = resolve_action(run)
    triple = rotation_triple(phi, run.q_max, run.iters)
    try:
        classification = str(classify_theorem1(triple).tag.value)
    except NonExactTriple as error:
        logger.warning(f"Triple of {phi.name} cannot be classified: {error}")
        classification = None
    print(f"{phi.name}: rotation triple {triple}, class {classification}")
    result = TripleResult(
        action=phi.name,
        backend=phi.backend,
        triple=triple_entries(triple),
        exact=triple.exact,
        classification=classification,
    )
    return result, classification is not None


def _clause_report(check) -> ClauseReport:
    return ClauseReport(
        clause=check.clause, passed=check.passed, margin=rational_text(check.margin), index=check.index, word=check.word
    )


def cmd_certify(run: RunConfig) -> tuple[Case1Result | Case2Result, bool]:
    """Run the certificate of the selected case."""
    phi = resolve_action(run)
    if run.case == 1:
        certificate = certify_case1(phi, run.max_syllables, run.threshold)
        trapped = sum(1 for verdict in certificate.word_verdicts if verdict.method == "trapped")
        print(
            f"{phi.name}: case 1 certificate passed on {len(certificate.word_verdicts)} words, "
            f"{trapped} trapped, {certificate.cross_checked} cross-checked"
        )
        result = Case1Result(
            x0=rational_text(certificate.x0),
            arc_i=tuple(rational_text(v) for v in certificate.arc_i),
            arc_j=tuple(rational_text(v) for v in certificate.arc_j),
            chain=[rational_text(v) for v in certificate.chain],
            words=len(certificate.word_verdicts),
            trapped=trapped,
            cross_checked=certificate.cross_checked,
            checks=[_clause_report(check) for check in certificate.generator_checks],
            verdicts=[
                WordVerdictReport(
                    word=verdict.word,
                    conjugacy=verdict.conjugacy,
                    rotation=str(verdict.rotation),
                    method=verdict.method,
                )
                for verdict in certificate.word_verdicts
            ],
        )
        return result, certificate.passed

    inequalities = verify_lemma_ineq(phi, run.window, run.threshold)
    markov = build_markov(phi, run.window, run.threshold)
    theta = build_theta(phi, run.max_syllables, run.threshold)
    min_margin = min(check.margin for check in markov.checks + inequalities.checks)
    print(
        f"{phi.name}: case 2 certificate passed, window {run.window}, theta on {len(theta.points)} points, "
        f"residuals {theta.equivariance_residual:.3g} / {theta.period_residual:.3g} measured on "
        f"{theta.equivariance_coverage} / {theta.period_coverage} points"
    )
    result = Case2Result(
        x0=rational_text(markov.x0),
        window=markov.window,
        inequality_checks=len(inequalities.checks),
        markov_checks=len(markov.checks),
        min_margin=rational_text(min_margin),
        intervals=[
            IntervalReport(
                index=interval.index,
                i=(rational_text(interval.i_lo), rational_text(interval.i_hi)),
                j=(rational_text(interval.j_lo), rational_text(interval.j_hi)),
            )
            for interval in markov.intervals.values()
        ],
        theta=ThetaReport(
            points=[(rational_text(p), rational_text(q)) for p, q in theta.points],
            max_syllables=theta.max_syllables,
            equivariance_residual=theta.equivariance_residual,
            period_residual=theta.period_residual,
            extension_residual=theta.extension_residual,
            max_gap=theta.max_gap,
            shift_range=(rational_text(theta.shift_range[0]), rational_text(theta.shift_range[1])),
            equivariance_coverage=theta.equivariance_coverage,
            period_coverage=theta.period_coverage,
        ),
    )
    return result, inequalities.passed and markov.passed


def cmd_counterexample(run: RunConfig) -> tuple[CounterexampleResult, bool]:
    """
    Compare the triangle action pulled back to Z2 * Z3 with the k-fold lift of the Fuchsian action.

    (alpha beta)^k acts trivially in the triangle action but not in the k-fold lift.
    """
    k = run.k
    hat = hat_phi(k)
    lifted = k_fold_lift(fuchsian_O23(run.backend), k)
    q_max = max(run.q_max, k)
    hat_triple = rotation_triple(hat, q_max, run.iters)
    lift_triple = rotation_triple(lifted, q_max, run.iters)

    word = power(parse("ab"), k)
    hat_distance = float(nearest_translation(apply(hat, word))[1])
    lift_distance = float(nearest_translation(apply(lifted, word))[1])
    threshold = defaults.RELATION_THRESHOLD if run.threshold is None else run.threshold
    separated = hat_distance <= threshold and lift_distance >= SEPARATION_MARGIN
    equal_triples = hat_triple.entries == lift_triple.entries
    print(
        f"k = {k}: hat_phi {hat_triple}, {k}-fold lift {lift_triple}; "
        f"(ab)^{k} moves points by {hat_distance:.3g} and {lift_distance:.3g}"
    )
    result = CounterexampleResult(
        k=k,
        hat_triple=triple_entries(hat_triple),
        lift_triple=triple_entries(lift_triple),
        equal_triples=equal_triples,
        hat_distance=hat_distance,
        lift_distance=lift_distance,
        separated=separated,
    )
    return result, equal_triples and separated


def cmd_random(run: RunConfig) -> tuple[RandomResult, bool]:
    """Draw a random action with the triple of the selected case."""
    target = FIVE_FOLD_TRIPLE if run.case == 2 else FUCHSIAN_TRIPLE
    phi = random_action(target, run.seed)
    triple = rotation_triple(phi, run.q_max, run.iters)
    if run.out_action is not None:
        dump_action(phi, run.out_action)
    print(f"{phi.name}: rotation triple {triple}")
    return RandomResult(seed=run.seed, triple=triple_entries(triple), action=action_to_schema(phi)), True


def cmd_path(run: RunConfig) -> tuple[PathResult, bool]:
    """Connect a random action with triple (1/2, 1/3, 0) to the Fuchsian action or the given action."""
    start = random_action(FUCHSIAN_TRIPLE, run.seed)
    end = load_action(run.action, run.threshold) if run.action is not None else fuchsian_O23(Backend.PL)
    path = path_witness(start, end, run.steps)
    triples = [rotation_triple(phi, run.q_max, run.iters) for phi in path]
    print(f"Path of {len(path)} actions from {start.name} to {end.name} with constant rotation triple")
    result = PathResult(
        steps=len(path), start=start.name, end=end.name, triples=[triple_entries(triple) for triple in triples]
    )
    return result, True


def cmd_rot(run: RunConfig) -> tuple[RotResult, bool]:
    """Compute the rotation number of the image of a single word."""
    phi = resolve_action(run)
    word = parse(run.word)
    rotation = rotation_of_word(phi, word, run.q_max, run.iters)
    conjugacy = classify_conjugacy(word)
    print(f"{phi.name}: rot({word.text or '1'}) = {rotation}")
    result = RotResult(
        word=run.word, normal_form=word.text, conjugacy=str(conjugacy), rotation=rotation_entry(rotation)
    )
    return result, True


COMMANDS = {
    "triple": cmd_triple,
    "certify": cmd_certify,
    "counterexample": cmd_counterexample,
    "random": cmd_random,
    "path": cmd_path,
    "rot": cmd_rot,
}


def _add_source_arguments(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--fuchsian", action="store_true", help="use the Fuchsian action (default)")
    source.add_argument("--action", help="read the action from a JSON action file")
    source.add_argument("--triangle", type=int, metavar="K", help="use the (2, 3, K) triangle action")
    parser.add_argument("--lift", type=int, metavar="K", help="take the K-fold lift of the action")


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one sub-parser per command."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-syllables", type=int, default=defaults.MAX_SYLLABLES)
    common.add_argument("--window", type=int, default=defaults.WINDOW)
    common.add_argument("--q-max", type=int, default=defaults.Q_MAX)
    common.add_argument("--iters", type=int, default=defaults.ITERS)
    common.add_argument("--threshold", type=float, default=None)
    common.add_argument("--backend", choices=[backend.value for backend in Backend], default=defaults.BACKEND)
    common.add_argument("--out", help="write the JSON report to this file")

    parser = argparse.ArgumentParser(prog="rotkit", description="Certified rotation numbers of Z2 * Z3 actions.")
    commands = parser.add_subparsers(dest="command", required=True)

    triple = commands.add_parser("triple", parents=[common], help="rotation triple and classification")
    _add_source_arguments(triple)

    certify = commands.add_parser("certify", parents=[common], help="run a semi-conjugacy certificate")
    _add_source_arguments(certify)
    certify.add_argument("--case", type=int, choices=(1, 2), required=True)

    counterexample = commands.add_parser(
        "counterexample", parents=[common], help="compare the triangle action with the k-fold lift"
    )
    counterexample.add_argument("k", type=int)

    random = commands.add_parser("random", parents=[common], help="draw a random action")
    random.add_argument("--seed", type=int, required=True)
    random.add_argument("--case", type=int, choices=(1, 2), default=1)
    random.add_argument("--out-action", help="write the action file")

    path = commands.add_parser("path", parents=[common], help="path of actions with constant triple")
    path.add_argument("--seed", type=int, required=True)
    path.add_argument("--action", help="end point of the path, the Fuchsian action by default")
    path.add_argument("--steps", type=int, default=16)

    rot = commands.add_parser("rot", parents=[common], help="rotation number of a single word")
    _add_source_arguments(rot)
    rot.add_argument("word")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """
    Run rotkit.

    :returns: 0 if all verdicts pass, 1 for a certificate failure, 2 for invalid input
    """
    arguments = vars(build_parser().parse_args(argv))
    start = time.perf_counter()
    try:
        run = RunConfig(**{key: value for key, value in arguments.items() if value is not None})
    except ValidationError as error:
        print(f"Invalid arguments: {error}", file=sys.stderr)
        return EXIT_USAGE

    result: CommandResult | None = None
    failure = None
    try:
        result, passed = COMMANDS[run.command](run)
    except CertificateFailure as error:
        logger.info(f"Certificate failed: {error}")
        failure = Failure(clause=error.clause, message=str(error))
        passed = False
    except (ValidationError, ValueError, OSError) as error:
        print(f"Invalid input: {error}", file=sys.stderr)
        return EXIT_USAGE
    except RotkitError as error:
        failure = Failure(clause=type(error).__name__, message=str(error))
        passed = False

    report = Report(
        config=run, passed=passed, result=result, failure=failure, wall_time=time.perf_counter() - start
    )
    if failure is not None:
        print(f"FAILED {failure.clause}: {failure.message}")
    if run.out is not None:
        run.out.write_text(report.model_dump_json(by_alias=True, indent=2), encoding="utf-8")
    return EXIT_PASS if passed else EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
