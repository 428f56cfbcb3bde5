"""Exceptions raised by rotkit operations."""


class RotkitError(Exception):
    """Base class of all rotkit errors."""


class MalformedLift(RotkitError, ValueError):
    """A lift description does not define a strictly increasing degree-one map or violates the group relations."""


class InvalidK(RotkitError, ValueError):
    """The cone order k is not admissible for the requested construction."""


class NoLiftExists(RotkitError, ValueError):
    """No k-fold lift of the action exists."""


class UnsupportedTriple(RotkitError, ValueError):
    """The requested rotation triple is not one random generation supports."""


class NonExactTriple(RotkitError, ValueError):
    """A rotation triple entry is only known through an enclosure."""


class NoSolution(RotkitError):
    """A point required by a construction does not exist."""


class NormalizationFailure(RotkitError):
    """An action could not be conjugated into normal position."""


class CertificateFailure(RotkitError):
    """A certificate clause was violated.

    :param clause: name of the violated clause
    :param witness: optional data which demonstrates the violation
    """

    def __init__(self, clause: str, message: str | None = None, witness=None):
        self.clause = clause
        self.witness = witness
        super().__init__(f"{clause}: {message}" if message else clause)


class PreconditionError(CertificateFailure):
    """The input does not satisfy the precondition of a certificate."""


class InequalityFailure(CertificateFailure):
    """One of the order relations required by the case-2 certificate fails."""


class WellDefinednessFailure(CertificateFailure):
    """Coincident orbit points are mapped to different points."""


class MonotonicityFailure(CertificateFailure):
    """The tabulated equivariant map is not strictly increasing."""


class DensityFailure(CertificateFailure):
    """The tabulated orbit is too sparse for the requested gap."""
