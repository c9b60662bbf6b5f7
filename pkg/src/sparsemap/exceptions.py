"""Exception types raised by sparsemap.

All input-level failures derive from ``ValueError`` so callers that do not
care about the fine-grained category can catch the usual builtin.
"""


class SparsemapError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(SparsemapError, ValueError):
    """Array shapes or lengths do not match what an operation requires."""


class DomainError(SparsemapError, ValueError):
    """A numeric argument is outside the domain of the operation."""


class ConfigurationError(SparsemapError, ValueError):
    """A model, prior, or option combination is not supported."""


class MomentUndefinedError(DomainError):
    """The requested prior moment does not exist (gamma argument <= 0)."""


class InfeasibleMomentsError(DomainError):
    """No hyperparameters reproduce the requested mean and variance."""


class RankDeficiencyError(SparsemapError, ValueError):
    """A matrix that must be nonsingular is rank deficient."""


class InternalError(SparsemapError, RuntimeError):
    """An invariant the implementation relies on was violated."""
