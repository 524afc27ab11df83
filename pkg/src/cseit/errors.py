"""Exception types raised by the simulation modules."""


class EITError(Exception):
    """Base class for numeric failures of the model."""


class NonConvergence(EITError):
    """A series hit its term cap before meeting the tolerance."""


class InvalidParameter(EITError, ValueError):
    """An argument lies outside the domain of the operation."""


class NoSignChange(EITError):
    """The group index keeps one sign over the requested mode-number range."""


class WindowTooShort(EITError):
    """A pulse does not fit inside its sampling window."""
