"""Monte Carlo harness: data generation, metrics, and replicated studies.

Randomness contract: every stream is a numpy ``Generator`` over the Philox
counter-based 64-bit bit generator ("philox4x64"), keyed by
``(master_seed, replication_index)``.  Replication r therefore produces the
same data no matter how many replications run, in what order, or on how many
threads, and extending R leaves earlier replications bit-identical.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .em import FitProblem, fit_map
from .exceptions import ConfigurationError, DimensionError, DomainError
from .glasso import weighted_glasso
from .priors import (
    GroupStructure,
    NoiseModel,
    PriorSpec,
    _ep_ig_logpdf,
)
from .solvers import (
    Dataset,
    SolverOptions,
    soft_threshold,
    weighted_group_linear,
    weighted_l1_linear,
    weighted_l1_logistic,
)
from .validation import as_float_matrix, as_float_vector, check_symmetric

GENERATOR_NAME = "philox4x64"

THREADS_ENV_VAR = "SPARSEMAP_THREADS"


def substream(seed, rep):
    """Independent stream for one replication: Philox keyed by (seed, rep)."""
    key = np.array([np.uint64(seed), np.uint64(rep)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


# ---------------------------------------------------------------------------
# Synthetic data
# ---------------------------------------------------------------------------

def ar1_covariance(p, rho):
    """Covariance with entries rho^|i-j|."""
    if not -1.0 < rho < 1.0:
        raise DomainError("rho must be in (-1, 1)")
    idx = np.arange(p)
    return rho ** np.abs(np.subtract.outer(idx, idx))


def gen_correlated_design(n, p, rho, stream):
    """n rows i.i.d. N(0, Sigma) with Sigma_ij = rho^|i-j| via Cholesky."""
    sigma = ar1_covariance(p, rho)
    chol = np.linalg.cholesky(sigma)
    return stream.standard_normal((n, p)) @ chol.T


def gen_responses(X, beta, noise, stream):
    """Responses for a design: Gaussian with sd ``noise`` or logistic labels.

    ``noise`` is either a non-negative float (linear: y = X beta + noise * eps)
    or the string ``"logistic"`` (labels +-1 with the logistic probability).
    """
    X = as_float_matrix(X, "X")
    beta = as_float_vector(beta, "beta")
    if beta.size != X.shape[1]:
        raise DimensionError("beta length does not match X")
    mean = X @ beta
    if isinstance(noise, str):
        if noise != "logistic":
            raise ConfigurationError(f"unknown response kind {noise!r}")
        prob = 1.0 / (1.0 + np.exp(-mean))
        return np.where(stream.random(X.shape[0]) < prob, 1.0, -1.0)
    if noise < 0:
        raise DomainError("noise sd must be non-negative")
    return mean + noise * stream.standard_normal(X.shape[0])


def gen_gaussian_samples(omega, n, stream):
    """n draws from N(0, omega^-1) plus their second-moment matrix S."""
    omega = check_symmetric(omega, "omega", tol=1e-10)
    eigs = np.linalg.eigvalsh(omega)
    if eigs[0] <= 0:
        raise DomainError("omega must be positive definite")
    cov = np.linalg.inv(omega)
    chol = np.linalg.cholesky((cov + cov.T) / 2.0)
    X = stream.standard_normal((n, omega.shape[0])) @ chol.T
    S = X.T @ X / n
    return X, S


# ---------------------------------------------------------------------------
# Scoring
# ---------------------------------------------------------------------------

class SupportMetrics(NamedTuple):
    error: float
    correct: bool
    fp: int
    fn: int


def support_metrics(estimate, truth):
    """l2 error and exact-support comparison against the truth.

    Matrix arguments are scored on the upper triangle: the error is the
    Frobenius norm over i <= j and the support counts cover off-diagonal
    entries only (the diagonal of a precision matrix is never zero).
    """
    estimate = np.asarray(estimate, dtype=float)
    truth = np.asarray(truth, dtype=float)
    if estimate.shape != truth.shape:
        raise DimensionError(f"shape mismatch: {estimate.shape} vs {truth.shape}")
    if estimate.ndim == 2:
        iu = np.triu_indices(estimate.shape[0])
        error = float(np.linalg.norm(estimate[iu] - truth[iu]))
        io = np.triu_indices(estimate.shape[0], k=1)
        est_nz = estimate[io] != 0.0
        tru_nz = truth[io] != 0.0
    elif estimate.ndim == 1:
        error = float(np.linalg.norm(estimate - truth))
        est_nz = estimate != 0.0
        tru_nz = truth != 0.0
    else:
        raise DimensionError("estimate must be a vector or a square matrix")
    fp = int(np.sum(est_nz & ~tru_nz))
    fn = int(np.sum(~est_nz & tru_nz))
    return SupportMetrics(error, fp == 0 and fn == 0, fp, fn)


# ---------------------------------------------------------------------------
# Experiment configuration and replication loop
# ---------------------------------------------------------------------------

MODELS = ("linear", "linear-random-noise", "logistic", "group-linear", "ggm")
METHODS = ("hal", "lasso")


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything one replicated study needs, including its master seed."""

    model: str
    method: str
    n: int
    beta: tuple | None = None           # truth for regression models
    omega: tuple | None = None          # truth for the ggm model (row tuples)
    rho: float = 0.5
    delta: float | None = 1.0           # fixed noise sd (linear/group models)
    noise_prior: tuple | None = None    # (a_delta, b_delta) for random variance
    a: float = 2.0
    b: float = 0.1
    q: float = 1.0
    overrides: tuple = ()               # ((index, a, b), ...) 0-based
    tau: float | None = None            # lasso baseline scale
    tau_overrides: tuple = ()           # ((index, tau), ...)
    group_size: int | None = None
    jeffreys: bool = False
    reps: int = 1000
    seed: int = 12345
    label: str = ""
    tol: float = 1e-8
    max_iter: int = 10000
    max_outer: int = 100

    def __post_init__(self):
        if self.model not in MODELS:
            raise ConfigurationError(f"unknown model {self.model!r}")
        if self.method not in METHODS:
            raise ConfigurationError(f"unknown method {self.method!r}")
        if self.reps < 1:
            raise ConfigurationError("reps must be at least 1")
        if not -1.0 < self.rho < 1.0:
            raise DomainError("rho must be in (-1, 1)")
        if self.model == "ggm":
            if self.omega is None:
                raise ConfigurationError("ggm model requires an omega truth")
        elif self.beta is None:
            raise ConfigurationError(f"{self.model} model requires a beta truth")
        if self.method == "lasso" and self.tau is None:
            raise ConfigurationError("lasso method requires tau")
        if self.model == "group-linear" and self.group_size is None:
            raise ConfigurationError("group-linear model requires group_size")
        if self.model == "linear-random-noise":
            if self.noise_prior is None:
                raise ConfigurationError("linear-random-noise requires noise_prior")
            if self.method != "hal":
                raise ConfigurationError("the lasso baseline assumes fixed noise")

    def truth(self):
        if self.model == "ggm":
            return symmetrized_truth(np.asarray(self.omega, dtype=float))
        return np.asarray(self.beta, dtype=float)

    def p(self):
        return self.truth().shape[0]  # also the matrix dimension for ggm

    def overrides_dict(self):
        return {int(i): (float(av), float(bv)) for i, av, bv in self.overrides}

    def tau_vector(self, p):
        tau = np.full(p, float(self.tau))
        for i, tv in self.tau_overrides:
            tau[int(i)] = float(tv)
        return tau


def symmetrized_truth(omega):
    """Symmetrize a displayed precision matrix and insist it ends up PD."""
    omega = as_float_matrix(omega, "omega")
    sym = (omega + omega.T) / 2.0
    if np.linalg.eigvalsh(sym)[0] <= 0:
        raise DomainError("symmetrized precision truth is not positive definite")
    return sym


@dataclass(frozen=True)
class MetricsSummary:
    """Aggregated replication results, one row of a results table."""

    n: int
    label: str
    avg_error: float
    pct_correct: float
    avg_fp: float
    avg_fn: float
    n_nonconverged: int
    reps: int
    seed: int
    generator: str = GENERATOR_NAME

    def row(self):
        return (self.n, self.label, self.avg_error, self.pct_correct,
                self.avg_fp, self.avg_fn, self.n_nonconverged, self.reps, self.seed)


def _solver_opts(config):
    return SolverOptions(tol=config.tol, max_iter=config.max_iter)


def _run_one_rep(config, rep):
    """Generate one replication's data, fit it, and score it."""
    stream = substream(config.seed, rep)
    truth = config.truth()
    opts = _solver_opts(config)

    if config.model == "ggm":
        _, S = gen_gaussian_samples(truth, config.n, stream)
        n, p = config.n, truth.shape[0]
        if config.method == "hal":
            prior = PriorSpec.matrix(p, config.a, config.b)
            problem = FitProblem.precision(S, n, prior)
            result = fit_map(problem, opts=opts, max_outer=config.max_outer)
            estimate, converged = result.estimate.omega, result.converged
        else:
            W = np.full((p, p), 1.0 / config.tau)
            est = weighted_glasso(S, n, W, opts=opts)
            estimate, converged = est.omega, est.converged
        return support_metrics(estimate, truth), converged

    p = truth.size
    X = gen_correlated_design(config.n, p, config.rho, stream)

    if config.model == "logistic":
        y = gen_responses(X, truth, "logistic", stream)
        data = Dataset(X, y)
        if config.method == "hal":
            prior = PriorSpec.per_coordinate(p, config.a, config.b,
                                             overrides=config.overrides_dict())
            problem = FitProblem.logistic(data, prior, jeffreys=config.jeffreys)
            result = fit_map(problem, opts=opts, max_outer=config.max_outer)
            estimate, converged = result.estimate, result.converged
        else:
            res = weighted_l1_logistic(data, 1.0 / config.tau_vector(p), opts=opts)
            estimate, converged = res.beta, res.converged
        return support_metrics(estimate, truth), converged

    # linear-likelihood models
    if config.model == "linear-random-noise":
        a_d, b_d = config.noise_prior
        delta2 = 1.0 / stream.gamma(a_d, 1.0 / b_d)
        delta = float(np.sqrt(delta2))
    else:
        delta = float(config.delta)
    y = gen_responses(X, truth, delta, stream)
    data = Dataset.from_arrays(X, y, center=True)

    if config.model == "group-linear":
        groups = GroupStructure.contiguous(p, config.group_size)
        v = 1.0 / config.delta**2
        if config.method == "hal":
            prior = PriorSpec.grouped(groups, config.a, config.b,
                                      overrides=config.overrides_dict())
            problem = FitProblem.group_linear(data, prior, NoiseModel.fixed(config.delta**2))
            result = fit_map(problem, opts=opts, max_outer=config.max_outer)
            estimate, converged = result.estimate, result.converged
        else:
            w = np.full(groups.n_groups, 1.0 / config.tau)
            res = weighted_group_linear(data, groups, w, v, opts=opts)
            estimate, converged = res.beta, res.converged
        return support_metrics(estimate, truth), converged

    if config.method == "hal":
        prior = PriorSpec.per_coordinate(p, config.a, config.b, q=config.q,
                                         overrides=config.overrides_dict())
        if config.model == "linear-random-noise":
            noise = NoiseModel.inverse_gamma(*config.noise_prior)
        else:
            noise = NoiseModel.fixed(config.delta**2)
        problem = FitProblem.linear(data, prior, noise)
        result = fit_map(problem, opts=opts, max_outer=config.max_outer)
        estimate, converged = result.estimate, result.converged
    else:
        v = 1.0 / config.delta**2
        res = weighted_l1_linear(data, 1.0 / config.tau_vector(p), v, opts=opts)
        estimate, converged = res.beta, res.converged
    return support_metrics(estimate, truth), converged


def _thread_count(threads):
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV_VAR, "1"))
    return max(1, int(threads))


def run_replications(config, threads=None):
    """Run the configured study; deterministic given the master seed.

    Replication r draws from ``substream(seed, r)`` for r in 1..reps, so the
    summary does not depend on execution order or thread count.
    """
    reps = config.reps
    results = [None] * reps

    def work(r):
        results[r - 1] = _run_one_rep(config, r)

    n_threads = _thread_count(threads)
    if n_threads > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            list(pool.map(work, range(1, reps + 1)))
    else:
        for r in range(1, reps + 1):
            work(r)

    metrics = np.array([[m.error, m.correct, m.fp, m.fn] for m, _ in results])
    n_bad = sum(1 for _, ok in results if not ok)
    return MetricsSummary(
        n=config.n,
        label=config.label,
        avg_error=float(metrics[:, 0].mean()),
        pct_correct=float(100.0 * metrics[:, 1].mean()),
        avg_fp=float(metrics[:, 2].mean()),
        avg_fn=float(metrics[:, 3].mean()),
        n_nonconverged=n_bad,
        reps=reps,
        seed=config.seed,
    )


# ---------------------------------------------------------------------------
# Figure data: threshold curves and penalty contours
# ---------------------------------------------------------------------------

PENALTY_FAMILIES = ("lasso", "hal", "har")


def _penalty_1d(family, params):
    """Scalar penalty function (negative log prior up to a constant)."""
    if family == "lasso":
        w = float(params["w"])
        if w < 0:
            raise DomainError("lasso weight must be non-negative")
        return lambda beta: w * np.abs(beta)
    a, b = float(params["a"]), float(params["b"])
    if a <= 0 or b <= 0:
        raise DomainError("a and b must be positive")
    if family == "hal":
        return lambda beta: (a + 1.0) * np.log1p(np.abs(beta) / b)
    if family == "har":
        return lambda beta: (a + 0.5) * np.log1p(beta**2 / b)
    raise ConfigurationError(f"unknown penalty family {family!r}")


def _penalty_derivative(family, params):
    if family == "hal":
        a, b = float(params["a"]), float(params["b"])
        return lambda beta: np.sign(beta) * (a + 1.0) / (b + np.abs(beta))
    if family == "har":
        a, b = float(params["a"]), float(params["b"])
        return lambda beta: (2.0 * a + 1.0) * beta / (b + beta**2)
    raise ConfigurationError(f"no smooth derivative for family {family!r}")


def threshold_curve(family, z_grid, grid_step=1e-4, **params):
    """Scalar MAP shrinkage curve: argmin_b (1/2)(z - b)^2 + penalty(b).

    The lasso curve is the exact soft threshold.  For the log penalties the
    global minimizer is found by a dense grid over [0, z] (step <=
    ``grid_step``) refined by bisection on the stationarity equation, then
    compared against b = 0.
    """
    z_grid = as_float_vector(z_grid, "z_grid")
    if family == "lasso":
        w = float(params["w"])
        return np.column_stack([z_grid, soft_threshold(z_grid, w)])
    pen = _penalty_1d(family, params)
    dpen = _penalty_derivative(family, params)
    out = np.empty_like(z_grid)
    for k, z in enumerate(z_grid):
        out[k] = _minimize_scalar_map(z, pen, dpen, grid_step)
    return np.column_stack([z_grid, out])


def _minimize_scalar_map(z, pen, dpen, grid_step):
    if z == 0.0:
        return 0.0
    lo, hi = (0.0, z) if z > 0 else (z, 0.0)
    npts = max(int(np.ceil((hi - lo) / grid_step)) + 1, 2)
    grid = np.linspace(lo, hi, npts)
    h = 0.5 * (z - grid) ** 2 + pen(grid)
    k = int(np.argmin(h))
    best, best_val = grid[k], h[k]
    # refine interior stationary points: h'(b) = b - z + pen'(b)
    if 0 < k < npts - 1 and best != 0.0:
        hprime = lambda b: b - z + dpen(b)
        a_, b_ = grid[k - 1], grid[k + 1]
        if a_ != 0.0 and b_ != 0.0 and hprime(a_) * hprime(b_) < 0:
            for _ in range(200):
                mid = 0.5 * (a_ + b_)
                if hprime(a_) * hprime(mid) <= 0:
                    b_ = mid
                else:
                    a_ = mid
                if b_ - a_ < 1e-14 * max(1.0, abs(z)):
                    break
            refined = 0.5 * (a_ + b_)
            val = 0.5 * (z - refined) ** 2 + pen(refined)
            if val < best_val:
                best, best_val = refined, val
    zero_val = 0.5 * z**2 + pen(0.0)
    if zero_val <= best_val:
        return 0.0
    return float(best)


def penalty_contour(family, grid, **params):
    """Summed 1-D penalties on a 2-D grid: rows (b1, b2, neg log density).

    All normalizing constants are kept, so the lasso value at the origin is
    2*log(2*tau) and the adaptive families match their marginal densities.
    """
    grid = as_float_vector(grid, "grid")
    if grid.size == 0:
        raise DomainError("contour grid must not be empty")
    if family == "lasso":
        tau = float(params["tau"])
        if tau <= 0:
            raise DomainError("tau must be positive")
        neg_log = lambda beta: np.log(2.0 * tau) + np.abs(beta) / tau
    elif family in ("hal", "har"):
        a, b = float(params["a"]), float(params["b"])
        q = 1.0 if family == "hal" else 2.0
        neg_log = lambda beta: -_ep_ig_logpdf(np.abs(beta), a, b, q)
    else:
        raise ConfigurationError(f"unknown penalty family {family!r}")
    vals1 = neg_log(grid)
    rows = []
    for i, b1 in enumerate(grid):
        for j, b2 in enumerate(grid):
            rows.append((b1, b2, vals1[i] + vals1[j]))
    return np.asarray(rows)


# ---------------------------------------------------------------------------
# Study presets mirroring the published tables
# ---------------------------------------------------------------------------

BETA_LINEAR = (3.0, 1.5, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0)

_BETA_GROUPED = np.zeros(32)
_BETA_GROUPED[0:4] = (3.0, 1.5, 2.0, 0.5)
_BETA_GROUPED[8:12] = (6.0, 3.0, 4.0, 1.0)
_BETA_GROUPED[16:20] = (1.5, 0.75, 1.0, 0.25)
BETA_GROUPED = tuple(_BETA_GROUPED)

OMEGA_TRUTH = (
    (1.0, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0),
    (0.0, 1.5, 0.0, 0.2, 0.8, 0.0, 0.0, 0.0),
    (0.0, 0.0, 0.5, 0.3, 0.0, 0.2, 0.0, 0.0),
    (0.0, 0.2, 0.3, 2.0, 0.0, 0.0, 0.0, 1.5),
    (0.5, 0.8, 0.0, 0.0, 1.0, 0.0, 0.5, 0.0),
    (0.0, 0.0, 0.2, 0.0, 0.0, 0.5, 0.3, 0.0),
    (0.0, 0.0, 0.0, 0.0, 0.1, 0.3, 1.5, 0.0),
    (0.0, 0.0, 0.0, 1.5, 0.0, 0.0, 0.0, 2.0),
)

DEFAULT_SEED = 12345


def _linear_hal(n, a, b, delta, label, overrides=(), reps=1000, seed=DEFAULT_SEED):
    return ExperimentConfig(
        model="linear", method="hal", n=n, beta=BETA_LINEAR, delta=delta,
        a=a, b=b, overrides=overrides, reps=reps, seed=seed, label=label,
    )


def _linear_lasso(n, tau, delta, label, tau_overrides=(), reps=1000, seed=DEFAULT_SEED):
    return ExperimentConfig(
        model="linear", method="lasso", n=n, beta=BETA_LINEAR, delta=delta,
        tau=tau, tau_overrides=tau_overrides, reps=reps, seed=seed, label=label,
    )


def preset_configs(name, reps=None, seed=None):
    """Configs for a named study; ``reps``/``seed`` override the defaults."""
    if name not in PRESETS:
        raise ConfigurationError(
            f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}"
        )
    configs = PRESETS[name]()
    if reps is not None or seed is not None:
        from dataclasses import replace

        configs = [
            replace(c, reps=reps if reps is not None else c.reps,
                    seed=seed if seed is not None else c.seed)
            for c in configs
        ]
    return configs


def _preset_lasso_linear_delta1():
    return [
        _linear_lasso(n, tau, 1.0, f"tau={tau}")
        for n in (40, 80)
        for tau in (0.2, 0.1, 0.02)
    ]


def _preset_hal_linear_delta1():
    return [
        _linear_hal(n, a, b, 1.0, f"({a:g},{b:g})")
        for n in (40, 80)
        for a, b in ((1.0, 0.1), (2.0, 0.1), (2.0, 0.05))
    ]


def _preset_lasso_linear_delta3():
    star = ((1, 0.25), (4, 0.25))  # tau_2 = tau_5 = 0.25 in 1-based labels
    return [
        _linear_lasso(40, 1.0 / 6.0, 3.0, "tau=1/6"),
        _linear_lasso(40, 0.125, 3.0, "tau=0.125"),
        _linear_lasso(40, 0.125, 3.0, "tau=0.125*", tau_overrides=star),
    ]


def _preset_hal_linear_delta3():
    star = ((1, 2.0, 2.0), (4, 2.0, 2.0))  # (a_2,b_2,a_5,b_5) = (2,2,2,2)
    return [
        _linear_hal(40, 2.0, 0.75, 3.0, "(2,0.75)"),
        _linear_hal(40, 2.0, 0.1, 3.0, "(2,0.1)"),
        _linear_hal(40, 2.0, 0.1, 3.0, "(2,0.1)*", overrides=star),
    ]


def _preset_hal_linear_random_noise():
    star = ((1, 2.0, 2.0), (4, 2.0, 2.0))
    rows = [
        ((3.0, 5.0), 2.0, 0.1, (), "(3,5)(2,0.1)"),
        ((1.0, 1.0), 2.0, 0.1, (), "(1,1)(2,0.1)"),
        ((1.0, 4.0), 2.0, 0.2, (), "(1,4)(2,0.2)"),
        ((1.0, 4.0), 2.0, 0.2, star, "(1,4)(2,0.2)*"),
    ]
    return [
        ExperimentConfig(
            model="linear-random-noise", method="hal", n=40, beta=BETA_LINEAR,
            noise_prior=np_prior, a=a, b=b, overrides=ov, reps=1000,
            seed=DEFAULT_SEED, label=label,
        )
        for np_prior, a, b, ov, label in rows
    ]


def _preset_grouplasso_linear_delta3():
    return [
        ExperimentConfig(
            model="group-linear", method="lasso", n=40, beta=BETA_GROUPED,
            delta=3.0, tau=tau, group_size=4, reps=1000, seed=DEFAULT_SEED,
            label=label,
        )
        for tau, label in ((1.0 / 12.0, "tau=1/12"), (0.1, "tau=0.1"))
    ]


def _preset_ghal_linear_delta3():
    return [
        ExperimentConfig(
            model="group-linear", method="hal", n=40, beta=BETA_GROUPED,
            delta=3.0, a=a, b=b, group_size=4, reps=1000, seed=DEFAULT_SEED,
            label=f"({a:g},{b:g})",
        )
        for a, b in ((2.0, 0.75), (2.0, 0.7))
    ]


def _preset_lasso_logistic():
    return [
        ExperimentConfig(
            model="logistic", method="lasso", n=80, beta=BETA_LINEAR,
            delta=None, tau=1.0 / 7.5, reps=1000, seed=DEFAULT_SEED,
            label="tau=1/7.5",
        ),
        ExperimentConfig(
            model="logistic", method="lasso", n=80, beta=BETA_LINEAR,
            delta=None, tau=0.1, tau_overrides=((1, 1.0), (4, 1.0)),
            reps=1000, seed=DEFAULT_SEED, label="tau=0.1*",
        ),
    ]


def _preset_hal_logistic():
    star = ((1, 2.0, 2.0), (4, 2.0, 2.0))
    dagger = ((0, 2.0, 0.5), (1, 2.0, 2.0), (4, 2.0, 2.0))
    rows = [
        (2.0, 0.65, (), "(2,0.65)"),
        (2.0, 0.1, star, "(2,0.1)*"),
        (2.0, 0.1, dagger, "(2,0.1)+"),
    ]
    return [
        ExperimentConfig(
            model="logistic", method="hal", n=80, beta=BETA_LINEAR, delta=None,
            a=a, b=b, overrides=ov, reps=1000, seed=DEFAULT_SEED, label=label,
        )
        for a, b, ov, label in rows
    ]


def _preset_lasso_ggm():
    return [
        ExperimentConfig(
            model="ggm", method="lasso", n=40, omega=OMEGA_TRUTH, delta=None,
            tau=tau, reps=1000, seed=DEFAULT_SEED, label=label,
        )
        for tau, label in ((1.0 / 45.0, "tau=1/45"), (1.0 / 50.0, "tau=1/50"))
    ]


def _preset_hal_ggm():
    return [
        ExperimentConfig(
            model="ggm", method="hal", n=40, omega=OMEGA_TRUTH, delta=None,
            a=a, b=b, reps=1000, seed=DEFAULT_SEED, label=f"({a:g},{b:g})",
        )
        for a, b in ((1.0, 0.075), (2.0, 0.1))
    ]


PRESETS = {
    "lasso-linear-delta1": _preset_lasso_linear_delta1,
    "hal-linear-delta1": _preset_hal_linear_delta1,
    "lasso-linear-delta3": _preset_lasso_linear_delta3,
    "hal-linear-delta3": _preset_hal_linear_delta3,
    "hal-linear-random-noise": _preset_hal_linear_random_noise,
    "grouplasso-linear-delta3": _preset_grouplasso_linear_delta3,
    "ghal-linear-delta3": _preset_ghal_linear_delta3,
    "lasso-logistic": _preset_lasso_logistic,
    "hal-logistic": _preset_hal_logistic,
    "lasso-ggm": _preset_lasso_ggm,
    "hal-ggm": _preset_hal_ggm,
}
