"""Exception and warning types shared across the package."""

from __future__ import annotations

__all__ = [
    "SliceworksError",
    "ParseError",
    "NotInSliceCone",
    "DegenerateSlicePair",
    "EmptyUnitSet",
    "InsufficientUnits",
    "NoWitnessPath",
    "StepOutOfRange",
    "NonRealSymmetrization",
    "IncompatibleDomains",
    "OutOfDomain",
    "NoConvergence",
    "IdenticallyZero",
    "DomainCheckFailed",
    "PreconditionUnverified",
    "DomainCheckWarning",
]


class SliceworksError(Exception):
    """Base class for all library errors."""


class ParseError(SliceworksError):
    """Malformed textual or JSON input.

    Carries optional ``line``/``column`` (1-based) pointing at the offending
    spot of the source text.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None and column is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class NotInSliceCone(SliceworksError):
    """Components of a point do not share a single slice plane."""


class DegenerateSlicePair(SliceworksError):
    """Two slice units are equal (or nearly so); the 2x2 Vandermonde solve is singular."""


class EmptyUnitSet(SliceworksError):
    """A radius over an empty set of slice units was requested."""


class InsufficientUnits(SliceworksError):
    """Fewer than two sampled slice units admit the path; the two-unit radius is undefined."""


class NoWitnessPath(SliceworksError):
    """The witness-path search failed.  This never claims the point is outside the domain."""


class StepOutOfRange(SliceworksError):
    """Finite-difference step too large for the requested path-ball radius."""


class NonRealSymmetrization(SliceworksError):
    """A symmetrized value failed its realness bound; upstream data is numerically corrupt."""


class IncompatibleDomains(SliceworksError):
    """Operands live on incompatible domains (variable counts, centers, or glue data)."""


class OutOfDomain(SliceworksError):
    """Evaluation requested outside the function's domain of validity."""


class NoConvergence(SliceworksError):
    """The root iteration failed to reach its residual target."""


class IdenticallyZero(SliceworksError):
    """The function vanishes identically; the zero set is the whole domain."""


class DomainCheckFailed(SliceworksError):
    """A requested domain precondition check came back Violated."""


class PreconditionUnverified(UserWarning):
    """Soft channel: a domain precondition was assumed, not witness-checked."""


class DomainCheckWarning(UserWarning):
    """Soft channel: a witness check ran and reported a violation, but the operation continued."""
