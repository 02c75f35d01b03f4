"""Exception types shared across the package."""


class ColorHarmonyError(Exception):
    """Base class for all package errors."""


class DataValidationError(ColorHarmonyError):
    """Input data violates a structural invariant (bad file, bad value, bad shape)."""


class NotFoundError(ColorHarmonyError):
    """A requested entity does not exist."""


class InvalidStateError(ColorHarmonyError):
    """The operation is valid but the system is not in a state to perform it."""
