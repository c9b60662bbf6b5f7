"""Sparse MAP estimation with hierarchical adaptive sparsity priors.

The package fits sparse linear models, logistic models, grouped-coefficient
models, and Gaussian-graphical-model precision matrices by EM-driven
iteratively reweighted penalized optimization, and ships a deterministic
Monte Carlo harness for variable-selection studies.
"""

from .em import (
    FitProblem,
    FitResult,
    TemperSchedule,
    fit_map,
    penalized_objective,
    tempered_fit,
)
from .estimators import (
    HALClassifier,
    HALGraphicalLasso,
    HALRegressor,
    GroupHALRegressor,
)
from .exceptions import (
    ConfigurationError,
    DimensionError,
    DomainError,
    InfeasibleMomentsError,
    InternalError,
    MomentUndefinedError,
    RankDeficiencyError,
    SparsemapError,
)
from .glasso import weighted_glasso
from .priors import (
    GroupStructure,
    NoiseModel,
    PriorSpec,
    WeightSet,
    coordinate_weights,
    group_weights,
    hyperparams_from_mean_var,
    log_marginal_prior,
    noise_weight,
    precision_weights,
    prior_moment,
    shared_group_weights,
)
from .solvers import (
    Dataset,
    PrecisionEstimate,
    SolverOptions,
    SolverResult,
    group_soft_threshold,
    logistic_jeffreys_logdet,
    soft_threshold,
    weighted_group_linear,
    weighted_l1_linear,
    weighted_l1_logistic,
    weighted_l2_linear,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError",
    "Dataset",
    "DimensionError",
    "DomainError",
    "FitProblem",
    "FitResult",
    "GroupHALRegressor",
    "GroupStructure",
    "HALClassifier",
    "HALGraphicalLasso",
    "HALRegressor",
    "InfeasibleMomentsError",
    "InternalError",
    "MomentUndefinedError",
    "NoiseModel",
    "PrecisionEstimate",
    "PriorSpec",
    "RankDeficiencyError",
    "SolverOptions",
    "SolverResult",
    "SparsemapError",
    "TemperSchedule",
    "WeightSet",
    "coordinate_weights",
    "fit_map",
    "group_soft_threshold",
    "group_weights",
    "hyperparams_from_mean_var",
    "log_marginal_prior",
    "logistic_jeffreys_logdet",
    "noise_weight",
    "penalized_objective",
    "precision_weights",
    "prior_moment",
    "shared_group_weights",
    "soft_threshold",
    "tempered_fit",
    "weighted_glasso",
    "weighted_group_linear",
    "weighted_l1_linear",
    "weighted_l1_logistic",
    "weighted_l2_linear",
]
