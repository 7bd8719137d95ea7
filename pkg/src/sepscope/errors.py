"""Exception hierarchy.

Configuration errors (bad input, out-of-range parameters) derive from
``ConfigError`` and map to CLI exit code 2; numerical failures derive from
``NumericalError`` and map to exit code 3.
"""


class SepscopeError(Exception):
    pass


class ConfigError(SepscopeError, ValueError):
    pass


class NumericalError(SepscopeError, ArithmeticError):
    pass


class NonSquare(ConfigError):
    pass


class NonHermitian(ConfigError):
    pass


class DimensionMismatch(ConfigError):
    pass


class InvalidDimension(ConfigError):
    pass


class IncompatibleCounts(ConfigError):
    pass


class UnknownFixture(ConfigError):
    pass


class UnknownKind(ConfigError):
    pass


class TOutOfRange(ConfigError):
    pass


class ParamOutOfRange(ConfigError):
    pass


class ShapeMismatch(ConfigError):
    pass


class InvalidPartition(ConfigError):
    pass


class InvalidState(ConfigError):
    pass


class DegenerateSpectrum(NumericalError):
    pass


class ValidationFailed(NumericalError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NoSignChange(NumericalError):
    def __init__(self, message, always_detects=False):
        super().__init__(message)
        self.always_detects = always_detects
