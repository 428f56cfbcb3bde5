"""Collection of global pydantic schemata."""

import importlib.metadata
from fractions import Fraction
from pathlib import Path
from typing import Annotated, Literal, Union

from packaging.version import InvalidVersion, Version
from pydantic import (
    AfterValidator,
    BaseModel,
    Field,
    PositiveFloat,
    PositiveInt,
    model_validator,
)

from actions.model import Backend
from circle_core.model import Mobius, PiecewiseLinear
from group_words.words import parse

SCHEMA_TAG = "rotkit/1"
MAX_SEED = 2**64 - 1


def validate_rational(value: str) -> str:
    """Validate that the value is a rational number and return it in canonical "p/q" form."""
    try:
        return str(Fraction(value.strip()))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"Invalid rational number: {value}!")


def validate_unit_rational(value: str) -> str:
    """Validate that the rational number lies in [0, 1)."""
    if not 0 <= Fraction(value) < 1:
        raise ValueError(f"Rotation number {value} is not in [0, 1)!")
    return value


def validate_word(value: str) -> str:
    """Validate that the value is a word over a, b and B."""
    parse(value)
    return value


RationalStr = Annotated[
    str,
    AfterValidator(validate_rational),
    Field(description="A rational number written as p/q.", examples=["1/2", "2/3", "0"]),
]

UnitRationalStr = Annotated[RationalStr, AfterValidator(validate_unit_rational)]

WordText = Annotated[
    str,
    AfterValidator(validate_word),
    Field(description="A word over a, b and B, the empty string is the identity.", examples=["ab", "abaB"]),
]


def rational_text(value) -> str:
    """Text form of a number in reports, exact values as p/q."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def get_version() -> str:
    """Get the installed package version, parsed by packaging."""
    try:
        return str(Version(importlib.metadata.version("rotkit")))
    except (importlib.metadata.PackageNotFoundError, InvalidVersion):
        return "0.0.0"


class RotLiftSchema(BaseModel):
    """Schema of a rigid translation x -> x + t."""

    type: Literal["rot"] = "rot"
    t: RationalStr | float


class PLLiftSchema(BaseModel):
    """Schema of a piecewise linear lift given by its breakpoints over one period."""

    type: Literal["pl"] = "pl"
    breakpoints: list[tuple[RationalStr, RationalStr]] = Field(min_length=1)

    @model_validator(mode="after")
    def check_homeomorphism(self) -> "PLLiftSchema":
        """Validate that the breakpoints define a strictly increasing lift."""
        PiecewiseLinear(tuple((Fraction(x), Fraction(y)) for x, y in self.breakpoints))
        return self


class MobiusLiftSchema(BaseModel):
    """Schema of the boundary lift of a matrix (a, b, c, d) with positive determinant."""

    type: Literal["mobius"] = "mobius"
    mat: tuple[float, float, float, float]
    sheet: int = 0

    @model_validator(mode="after")
    def check_determinant(self) -> "MobiusLiftSchema":
        """Validate that the matrix preserves the orientation."""
        Mobius(self.mat, self.sheet)
        return self


class CoveringLiftSchema(BaseModel):
    """Schema of the lift x -> (base(kx) + offset)/k."""

    type: Literal["covering"] = "covering"
    base: "LiftSchema"
    k: PositiveInt
    offset: int = 0


class CompositeLiftSchema(BaseModel):
    """Schema of a composition of lifts followed by an integer translation."""

    type: Literal["composite"] = "composite"
    factors: list["LiftSchema"] = Field(min_length=1)
    shift: int = 0


LiftSchema = Annotated[
    Union[RotLiftSchema, PLLiftSchema, MobiusLiftSchema, CoveringLiftSchema, CompositeLiftSchema],
    Field(discriminator="type"),
]

CoveringLiftSchema.model_rebuild()
CompositeLiftSchema.model_rebuild()


class ActionFile(BaseModel):
    """Schema of an action file."""

    lift_a: LiftSchema
    lift_b: LiftSchema
    rot_a: UnitRationalStr
    rot_b: UnitRationalStr
    backend: Backend = Backend.PL
    name: str = "custom"


class RunConfig(BaseModel):
    """Validated configuration of a command line run."""

    command: Literal["triple", "certify", "counterexample", "random", "path", "rot"]
    action: Path | None = None
    fuchsian: bool = False
    lift: PositiveInt | None = None
    triangle: PositiveInt | None = None
    case: Literal[1, 2] | None = None
    k: PositiveInt | None = None
    word: WordText | None = None
    seed: int | None = Field(default=None, ge=0, le=MAX_SEED)
    max_syllables: PositiveInt
    window: PositiveInt
    q_max: PositiveInt
    iters: PositiveInt
    threshold: PositiveFloat | None = None
    backend: Backend
    steps: int = Field(default=16, ge=2)
    out: Path | None = None
    out_action: Path | None = None

    @model_validator(mode="after")
    def check_command_arguments(self) -> "RunConfig":
        """Validate that every command has its required arguments."""
        if self.command in ("random", "path") and self.seed is None:
            raise ValueError(f"Command {self.command} requires a seed!")
        if self.command == "certify" and self.case is None:
            raise ValueError("Command certify requires a case!")
        if self.command == "counterexample" and self.k is None:
            raise ValueError("Command counterexample requires k!")
        if self.command == "rot" and self.word is None:
            raise ValueError("Command rot requires a word!")
        if sum((self.action is not None, self.triangle is not None)) > 1:
            raise ValueError("At most one of --action and --triangle can be given!")
        return self


class RotationEntry(BaseModel):
    """A rotation number, exact or as enclosure."""

    exact: bool
    value: RationalStr | None = None
    lo: RationalStr | None = None
    hi: RationalStr | None = None


class ClauseReport(BaseModel):
    """Verdict of a single certificate clause."""

    clause: str
    passed: bool
    margin: str
    index: int | None = None
    word: str | None = None


class Failure(BaseModel):
    """The first failing clause of a run."""

    clause: str
    message: str


class TripleResult(BaseModel):
    """Result of the triple command."""

    action: str
    backend: Backend
    triple: list[RotationEntry]
    exact: bool
    classification: str | None


class WordVerdictReport(BaseModel):
    """Verdict of a word of the case-1 certificate."""

    word: str
    conjugacy: str
    rotation: RationalStr
    method: str


class Case1Result(BaseModel):
    """Result of the case-1 certificate."""

    x0: str
    arc_i: tuple[str, str]
    arc_j: tuple[str, str]
    chain: list[str]
    words: int
    trapped: int
    cross_checked: int
    checks: list[ClauseReport]
    verdicts: list[WordVerdictReport]


class IntervalReport(BaseModel):
    """Endpoints of the intervals I_l and J_l."""

    index: int
    i: tuple[str, str]
    j: tuple[str, str]


class ThetaReport(BaseModel):
    """Table and residuals of the equivariant period-5 map."""

    points: list[tuple[str, str]]
    max_syllables: int
    equivariance_residual: float
    period_residual: float
    extension_residual: float
    max_gap: float
    shift_range: tuple[str, str]
    equivariance_coverage: int
    period_coverage: int


class Case2Result(BaseModel):
    """Result of the case-2 certificate."""

    x0: str
    window: int
    inequality_checks: int
    markov_checks: int
    min_margin: str
    intervals: list[IntervalReport]
    theta: ThetaReport


class CounterexampleResult(BaseModel):
    """Result of the counterexample command."""

    k: int
    hat_triple: list[RotationEntry]
    lift_triple: list[RotationEntry]
    equal_triples: bool
    hat_distance: float
    lift_distance: float
    separated: bool


class RandomResult(BaseModel):
    """Result of the random command."""

    seed: int
    triple: list[RotationEntry]
    action: ActionFile


class PathResult(BaseModel):
    """Result of the path command."""

    steps: int
    start: str
    end: str
    triples: list[list[RotationEntry]]


class RotResult(BaseModel):
    """Result of the rot command."""

    word: str
    normal_form: str
    conjugacy: str
    rotation: RotationEntry


CommandResult = Union[
    TripleResult, Case1Result, Case2Result, CounterexampleResult, RandomResult, PathResult, RotResult
]


class Report(BaseModel):
    """Versioned report of a command line run."""

    schema_tag: str = Field(default=SCHEMA_TAG, serialization_alias="schema")
    version: str = Field(default_factory=get_version)
    config: RunConfig
    passed: bool
    result: CommandResult | None = None
    failure: Failure | None = None
    wall_time: float = 0.0
