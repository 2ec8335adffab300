"""Exception taxonomy shared by the whole package.

Argument misuse (wrong types, out-of-range indices, missing labels) raises
plain ``ValueError``; the classes below cover domain failures and malformed
input data, so callers and the CLI can tell the two apart.
"""

from __future__ import annotations

__all__ = [
    "StableCurvesError",
    "ValidationError",
    "ParseError",
    "DegenerateInputError",
    "InconsistencyError",
    "NoFillError",
    "MultipleFillError",
    "InvalidCoordinateError",
    "UnsupportedOperationError",
    "BudgetExceededError",
]


class StableCurvesError(Exception):
    """Base class for all domain errors raised by this package."""


class ValidationError(StableCurvesError):
    """A structural invariant is violated (bivalent vertex, repeated label, ...)."""


class ParseError(StableCurvesError):
    """Malformed textual input.

    ``position`` is the 0-based character offset of the offending token when
    the input is a single string, or ``None`` for structured (JSON) input.
    """

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class DegenerateInputError(StableCurvesError):
    """Points that must be pairwise distinct coincide."""


class InconsistencyError(StableCurvesError):
    """Pieces of input that must agree (shared faces, decorations) do not."""


class NoFillError(StableCurvesError):
    """No simplex has the prescribed tuple of faces."""


class MultipleFillError(StableCurvesError):
    """More than one simplex has the prescribed tuple of faces.

    In dimensions where filling is unique this signals an internal
    consistency failure rather than a legitimate outcome.
    """


class InvalidCoordinateError(StableCurvesError):
    """A coordinate vector does not lie on the model variety."""


class UnsupportedOperationError(StableCurvesError):
    """The requested operation needs a capability the family does not have."""


class BudgetExceededError(StableCurvesError):
    """An enumeration grew beyond the configured budget."""
