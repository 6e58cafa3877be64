"""Exception types raised by the model."""


class ModelError(Exception):
    """Base class for all errors raised by quantmarket."""


class InvalidArgumentError(ModelError, ValueError):
    pass


class DimensionMismatchError(ModelError, ValueError):
    pass


class NormalizationError(ModelError, ValueError):
    """A zero vector was normalized, or a normalized state was required."""


class NumericConsistencyError(ModelError, ArithmeticError):
    """A quantity that must be real or conserved drifted past tolerance."""


class NormDriftError(NumericConsistencyError):
    def __init__(self, drift, limit):
        super().__init__(f"norm drift {drift:.3e} exceeds limit {limit:.1e}")
        self.drift = drift
        self.limit = limit
