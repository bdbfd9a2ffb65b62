"""
Exception types raised by the library; the CLI maps them to exit codes
"""


class UnitFitError(Exception):
    """Base class for every error raised by unitfit."""


class DomainError(UnitFitError, ValueError):
    """An argument lies outside the domain of the operation."""


class DataParseError(UnitFitError):
    """A token in a data file could not be read as a number."""

    def __init__(self, token, position):
        self.token = token
        self.position = position
        super().__init__(f"cannot parse token {token!r} at position {position}")


class DatasetNotFoundError(UnitFitError):
    """A dataset reference is neither an embedded id, a name nor a readable file."""


class UnknownFamilyError(UnitFitError):
    """A family token is not one of the seven supported families."""


class ConfigError(UnitFitError):
    """Invalid optimizer settings."""


class HessianError(UnitFitError):
    """A finite-difference stencil point left the feasible region."""
