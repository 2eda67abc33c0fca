"""Exception types shared across the package."""


class RankRegretError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(RankRegretError):
    """Weight vector or tuple length does not match the dataset dimensionality."""


class DimensionNot2D(RankRegretError):
    """Operation is only defined for two-attribute datasets."""


class KOutOfRange(RankRegretError):
    """Requested k is not within [1, n]."""


class AngleOutOfRange(RankRegretError):
    """An angle lies outside [0, pi/2]."""


class ConstantAttribute(RankRegretError):
    """A selected attribute has max == min and carries no ranking information."""


class NonFiniteValue(RankRegretError):
    """Input data contains NaN or infinity."""


class EmptySubset(RankRegretError):
    """A non-empty subset of tuple ids is required."""


class UncoverableSpace(RankRegretError):
    """The supplied ranges cannot cover the angular span (corrupted input)."""


class LPNumericalFailure(RankRegretError):
    """The feasibility LP did not converge."""


class EmptyCollection(RankRegretError):
    """A non-empty k-set collection is required."""


class GroundSetTooLarge(RankRegretError):
    """Exact hitting-set search is guarded to small ground sets."""


class NoUsableRows(RankRegretError):
    """Ingestion dropped every row of the input file."""


class ConfigError(RankRegretError):
    """Invalid run configuration (bad algorithm/k/dimension combination)."""
