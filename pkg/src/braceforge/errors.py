"""Exception hierarchy.

Every failed universal check carries a ``witness``: the element, pair or
triple that breaks the axiom, so callers can replay the failure.
"""

from __future__ import annotations

from typing import Any


class BraceForgeError(Exception):
    """Base class for all library errors."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class TableShapeError(BraceForgeError, ValueError):
    """Table is not square or has entries outside 0..n-1."""


class GroupAxiomError(BraceForgeError):
    """A Cayley table fails one of the group axioms."""


class NoIdentity(GroupAxiomError):
    pass


class NoInverse(GroupAxiomError):
    pass


class NotBijectiveRows(GroupAxiomError):
    pass


class NotAssociative(GroupAxiomError):
    pass


class NotASubgroup(BraceForgeError):
    pass


class NotNormal(BraceForgeError):
    pass


class TooShort(BraceForgeError, ValueError):
    pass


class TooLarge(BraceForgeError):
    """Input exceeds a size guard."""


class BadModulus(BraceForgeError, ValueError):
    pass


class BraceAxiomError(BraceForgeError):
    pass


class IdentityMismatch(BraceAxiomError):
    pass


class LeftBraceLawFails(BraceAxiomError):
    pass


class SeriesTermNotIdeal(BraceAxiomError):
    """A star-series term is not an ideal; this is always an internal bug."""


class NotAnIdeal(BraceAxiomError):
    pass


class WellDefinednessFailure(BraceAxiomError):
    pass


class NotBijective(BraceForgeError):
    """A tabulated solution map is not a bijection of X x X."""


class DocumentError(BraceForgeError):
    """A brace document could not be parsed or has the wrong schema."""
