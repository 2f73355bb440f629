"""Exception types shared across the package."""

from __future__ import annotations


class TauTiltError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(TauTiltError):
    pass


class InvalidField(InvalidInput):
    pass


class ShapeError(InvalidInput):
    pass


class NotAdmissible(InvalidInput):
    pass


class InvalidIdempotent(InvalidInput):
    pass


class AlgebraMismatch(InvalidInput):
    pass


class NotProjective(InvalidInput):
    pass


class BadSummand(InvalidInput):
    pass


class NotSilting(InvalidInput):
    pass


class NotBasic(InvalidInput):
    pass


class GroupTooLarge(InvalidInput):
    pass


class BadAction(InvalidInput):
    pass


class BadSubgroup(InvalidInput):
    pass


class NotNormal(InvalidInput):
    pass


class BadEmbedding(InvalidInput):
    pass


class PreconditionFailed(InvalidInput):
    pass


class InternalError(TauTiltError):
    """A self-check failed; this indicates a bug rather than bad input."""


class NotSplitField(TauTiltError):
    """Some simple quotient is a proper field extension of the base field.

    `minpoly` holds the offending irreducible factor (low-to-high codes) and
    `suggested_degree` an extension degree that splits it.
    """

    def __init__(self, message: str, minpoly=None, suggested_degree: int | None = None):
        super().__init__(message)
        self.minpoly = tuple(minpoly) if minpoly is not None else None
        self.suggested_degree = suggested_degree


class PossiblyInfinite(TauTiltError):
    """Mutation closure exceeded its node budget; `partial` carries what was found."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
