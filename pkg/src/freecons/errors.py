"""Exception hierarchy shared by every module."""


class FreeConsError(Exception):
    """Base class for all errors raised by the package."""


class GroupMismatchError(FreeConsError):
    """Operands belong to different groups."""


class UnsupportedOracleError(FreeConsError):
    """The requested algorithm does not support this subgroup description."""


class DegenerateError(FreeConsError):
    """The construction is degenerate (dihedral-like) or ascending."""


class EscalationCapError(FreeConsError):
    """Witness exponents were escalated past the cap without verification."""


class CapExceededError(FreeConsError):
    """An enumeration would exceed the configured size cap."""


class ConfigError(FreeConsError):
    """Malformed group configuration or word specification."""
