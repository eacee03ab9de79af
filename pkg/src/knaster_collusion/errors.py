"""Exception hierarchy shared by every module."""


class CollusionError(ValueError):
    """Base class for all validation errors raised by this package."""


class InvalidProfile(CollusionError):
    pass


class DegenerateProfile(CollusionError):
    """Raised when an operation needs more agents than the profile has."""


class InvalidMisreport(CollusionError):
    pass


class InvalidCoalition(CollusionError):
    pass


class InvalidSize(CollusionError):
    pass


class OracleTooLarge(CollusionError):
    """Raised when a brute-force enumeration would exceed the configured cap."""


class DegenerateBounds(CollusionError):
    """Raised when coalition-size bounds are requested for a constant profile."""


class InvariantViolation(AssertionError):
    """Two independent computations that must agree did not."""
