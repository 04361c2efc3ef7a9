"""Exception hierarchy.

Each class carries the CLI exit code it maps to, so the command layer can
translate failures without a lookup table.
"""

from __future__ import annotations


class LatticeTriError(Exception):
    exit_code = 3


class ParseError(LatticeTriError, ValueError):
    """Malformed matrix/ideal JSON or an unparseable rational."""

    exit_code = 2


class DomainError(LatticeTriError, ValueError):
    """Input is well formed but outside an operation's domain."""

    exit_code = 3


class NegativeEntryError(DomainError):
    pass


class DimensionError(DomainError):
    pass


class NotInvariantError(DomainError):
    """A chain member handed to a Ringrose check is not invariant."""


class NotIdempotentError(DomainError):
    pass


class InvalidSpecError(DomainError):
    pass


class InternalConsistencyError(LatticeTriError, AssertionError):
    """A check that the mathematics guarantees has failed.

    Raised when a constructed witness does not verify, when the three
    triangularizability criteria disagree, or when the semigroup theorem's
    conclusion fails on a fully enumerated closure. Any occurrence is a bug.
    """

    exit_code = 70
