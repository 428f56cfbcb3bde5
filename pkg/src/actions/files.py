"""Conversion between lifts, actions and their JSON file schemata."""

from fractions import Fraction
from pathlib import Path

from actions.actions import validate_action
from actions.model import CircleAction
from circle_core.model import Composite, Covering, LiftHomeo, Mobius, PiecewiseLinear, Rotation
from errors import MalformedLift
from logging_helper import get_logger
from schema import (
    ActionFile,
    CompositeLiftSchema,
    CoveringLiftSchema,
    LiftSchema,
    MobiusLiftSchema,
    PLLiftSchema,
    RotLiftSchema,
)

logger = get_logger(__name__)


def lift_from_schema(schema: LiftSchema) -> LiftHomeo:
    """
    Build a lift from its validated schema.

    :param schema: one of the lift schemata
    :returns: the lift
    """
    if isinstance(schema, RotLiftSchema):
        return Rotation(schema.t if isinstance(schema.t, float) else Fraction(schema.t))
    if isinstance(schema, PLLiftSchema):
        return PiecewiseLinear(tuple((Fraction(x), Fraction(y)) for x, y in schema.breakpoints))
    if isinstance(schema, MobiusLiftSchema):
        return Mobius(schema.mat, schema.sheet)
    if isinstance(schema, CoveringLiftSchema):
        return Covering(lift_from_schema(schema.base), schema.k, schema.offset)
    return Composite(tuple(lift_from_schema(factor) for factor in schema.factors), schema.shift)


def lift_to_schema(lift: LiftHomeo) -> LiftSchema:
    """
    Describe a lift by its schema.

    :raises MalformedLift: for lift types without file representation
    """
    if isinstance(lift, Rotation):
        return RotLiftSchema(t=str(lift.t) if lift.exact else float(lift.t))
    if isinstance(lift, PiecewiseLinear):
        return PLLiftSchema(breakpoints=[(str(x), str(y)) for x, y in lift.points])
    if isinstance(lift, Mobius):
        return MobiusLiftSchema(mat=lift.mat, sheet=lift.sheet)
    if isinstance(lift, Covering):
        return CoveringLiftSchema(base=lift_to_schema(lift.base), k=lift.k, offset=lift.offset)
    if isinstance(lift, Composite):
        return CompositeLiftSchema(factors=[lift_to_schema(factor) for factor in lift.factors], shift=lift.shift)
    raise MalformedLift(f"Lift type {type(lift).__name__} cannot be written to a file.")


def action_from_schema(schema: ActionFile) -> CircleAction:
    """Build an action from a validated action file."""
    return CircleAction(
        lift_from_schema(schema.lift_a),
        lift_from_schema(schema.lift_b),
        Fraction(schema.rot_a),
        Fraction(schema.rot_b),
        schema.backend,
        name=schema.name,
    )


def action_to_schema(phi: CircleAction) -> ActionFile:
    """Describe an action by its file schema."""
    return ActionFile(
        lift_a=lift_to_schema(phi.lift_a),
        lift_b=lift_to_schema(phi.lift_b),
        rot_a=str(phi.rot_a),
        rot_b=str(phi.rot_b),
        backend=phi.backend,
        name=phi.name,
    )


def load_action(path: Path | str, threshold: float | None = None) -> CircleAction:
    """
    Read an action file and check that its lifts satisfy the relations with the declared translation numbers.

    :param path: the action file
    :param threshold: accepted relation residual on the floating backend
    :raises pydantic.ValidationError: if the file content does not describe an action
    :raises MalformedLift: if the lifts violate the relations or the declared translation numbers
    :raises OSError: if the file cannot be read
    """
    path = Path(path)
    schema = ActionFile.model_validate_json(path.read_text(encoding="utf-8"))
    phi = action_from_schema(schema)
    check = validate_action(phi, threshold=threshold)
    if not check.valid:
        raise MalformedLift(
            f"Action {schema.name} in {path} is invalid: relation residuals {check.residual_a:.3g}, "
            f"{check.residual_b:.3g}, detected rotation numbers {check.detected_a}, {check.detected_b}, "
            f"declared {phi.rot_a}, {phi.rot_b}"
        )
    logger.debug(f"Loaded action {schema.name} from {path}")
    return phi


def dump_action(phi: CircleAction, path: Path | str) -> None:
    """Write an action file."""
    path = Path(path)
    path.write_text(action_to_schema(phi).model_dump_json(indent=2), encoding="utf-8")
    logger.debug(f"Wrote action {phi.name} to {path}")
