"""Exception hierarchy for besovcalc."""

from __future__ import annotations


class BesovCalcError(Exception):
    """Base class for all library errors."""


class DomainError(BesovCalcError):
    """An argument lies outside the mathematical domain of an operation."""


class QuadratureConvergenceError(BesovCalcError):
    """A quadrature or stabilization loop hit its budget without converging."""


class SingularResolventError(BesovCalcError):
    """A resolvent linear solve failed (sample point too close to the spectrum)."""


class EigensolverError(BesovCalcError):
    """The dense eigensolver failed to converge."""


class OperatorSpecError(BesovCalcError):
    """An operator specification (string or file) is malformed."""


class PreconditionError(BesovCalcError):
    """An operation's precondition on the operator or function is violated."""


class UsageError(BesovCalcError):
    """Command line arguments are malformed."""


class FunctionParseError(BesovCalcError):
    """A function-spec string failed to parse.

    Carries the 1-based column of the offending character and a description
    of what was expected there.
    """

    def __init__(self, position: int, expected: str):
        self.position = position
        self.expected = expected
        super().__init__(f"parse error at column {position}, expected {expected}")
