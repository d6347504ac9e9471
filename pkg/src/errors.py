# src/errors.py


class SigmaError(Exception):
    """Base class for every failure raised by the sigma-function toolkit."""


class DimensionError(SigmaError):
    pass


class DomainError(SigmaError):
    pass


class TruncationError(SigmaError):
    pass


class ConfigurationError(SigmaError):
    pass


class ConstructionError(SigmaError):
    pass


class UnsupportedRangeError(SigmaError):
    pass


class PrecisionError(SigmaError):
    pass


class ConvergenceError(SigmaError):
    pass


class ConditioningError(SigmaError):
    pass


class NormalizationError(SigmaError):
    pass


class StateError(SigmaError):
    pass


class DecompositionError(SigmaError):
    pass


class UndefinedError(SigmaError):
    pass


class DegenerateSample(SigmaError):
    """A sample fell on a zero or pole locus of the identity being checked."""
