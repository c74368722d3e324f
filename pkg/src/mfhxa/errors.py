"""Exception types raised across the package."""


class MfhxaError(ValueError):
    """Base class for all errors raised by mfhxa."""


class ParameterError(MfhxaError):
    """A configuration or argument value is outside its valid range."""


class DomainError(MfhxaError):
    """An input value is outside the mathematical domain of a transform."""


class InsufficientDataError(MfhxaError):
    """A series is too short for the requested operation."""


class LagTooLargeError(MfhxaError):
    """The requested lag does not fit inside the series."""


class LengthMismatchError(MfhxaError):
    """Two series that must be aligned have different lengths."""


class DegenerateScalingError(MfhxaError):
    """A scaling function contains zeros, so a log-log fit is undefined."""


class InsufficientPointsError(MfhxaError):
    """Too few usable points remain for a regression."""


class ConfidenceUndefinedError(MfhxaError):
    """A confidence interval cannot be formed (single resample)."""


class CsvFormatError(MfhxaError):
    """An input file could not be parsed as numeric CSV."""
