"""Exception types shared across the package.

All input-validation failures derive from ValueError and all numerical
failures from ArithmeticError, so callers can catch broadly or precisely.
"""


class DimensionError(ValueError):
    """A Fock dimension or matrix shape is invalid for the operation."""


class PrecisionError(ArithmeticError):
    """A truncation tail or tolerance cannot be met at the requested size."""


class NumericalError(ArithmeticError):
    """An iterative numerical procedure failed to converge."""


class UndefinedStatisticError(ArithmeticError):
    """A statistic (e.g. g2 of the vacuum) is undefined for this state."""


class CalibrationError(RuntimeError):
    """A calibration target is unattainable within the search bracket."""


class ConfigError(ValueError):
    """A run configuration value is out of range or inconsistent."""


class ResolutionError(ValueError):
    """A grid or histogram is too coarse to resolve the requested feature."""


class InvalidRateError(ValueError):
    """A count rate is negative or below the dark rate it must exceed."""


class FormatError(ValueError):
    """A data file or stream violates its declared format."""
