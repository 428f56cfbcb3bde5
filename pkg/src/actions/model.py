"""Action related domain types."""

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from circle_core.model import Enclosure, LiftHomeo


class Backend(str, enum.Enum):
    """Arithmetic used by the lifts of an action."""

    PL = "pl"
    MOBIUS = "mobius"


@dataclass(frozen=True)
class CircleAction:
    """
    A homomorphism Z2 * Z3 -> Homeo+(S^1) given by lifts of the images of alpha and beta.

    `rot_a` and `rot_b` are the declared translation numbers of the stored lifts, in [0, 1).
    """

    lift_a: LiftHomeo
    lift_b: LiftHomeo
    rot_a: Fraction
    rot_b: Fraction
    backend: Backend = Backend.PL
    name: str = field(default="custom", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rot_a", Fraction(self.rot_a))
        object.__setattr__(self, "rot_b", Fraction(self.rot_b))
        object.__setattr__(self, "backend", Backend(self.backend))
        for value in (self.rot_a, self.rot_b):
            if not 0 <= value < 1:
                raise ValueError(f"Declared translation number {value} is not in [0, 1).")

    @cached_property
    def lift_b_inverse(self) -> LiftHomeo:
        return self.lift_b.inverse()

    @property
    def exact(self) -> bool:
        return self.lift_a.exact and self.lift_b.exact


RotationValue = Fraction | Enclosure


@dataclass(frozen=True)
class RotationTriple:
    """Rotation numbers of the images of alpha, beta and alpha*beta."""

    ra: RotationValue
    rb: RotationValue
    rab: RotationValue

    @property
    def entries(self) -> tuple[RotationValue, RotationValue, RotationValue]:
        return self.ra, self.rb, self.rab

    @property
    def exact(self) -> bool:
        """True if all entries are known exactly."""
        return all(isinstance(entry, Fraction) or entry.pinned for entry in self.entries)

    def __str__(self) -> str:
        def _format(entry: RotationValue) -> str:
            if isinstance(entry, Fraction):
                return str(entry)
            return f"[{float(entry.lo):.6g}, {float(entry.hi):.6g}]"

        return "(" + ", ".join(_format(entry) for entry in self.entries) + ")"


# Rotation triples of the two Fuchsian semi-conjugacy classes
FUCHSIAN_TRIPLE = (Fraction(1, 2), Fraction(1, 3), Fraction(0))
FIVE_FOLD_TRIPLE = (Fraction(1, 2), Fraction(2, 3), Fraction(1, 5))


class SemiConjTag(str, enum.Enum):
    """Semi-conjugacy classes recognized by their rotation triple."""

    FUCHSIAN_O23 = "FuchsianO23"
    FIVE_FOLD_LIFT = "FiveFoldLift"
    UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class SemiConjClass:
    """Classification result together with the triple it is based on."""

    tag: SemiConjTag
    triple: tuple[Fraction, Fraction, Fraction]
