"""Inner solvers for the weighted penalized problems of each M-step.

Every solver returns a :class:`SolverResult` instead of raising on
non-convergence, so callers can propagate partial iterates.  Convergence is
declared only when the sup-norm parameter change falls below ``tol`` and a
freshly computed stationarity residual falls below ``5 * tol`` (callers and
tests certify at ``10 * tol``).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    ConfigurationError,
    DimensionError,
    DomainError,
    InternalError,
    RankDeficiencyError,
)
from .priors import GroupStructure, WeightSet
from .validation import as_float_matrix, as_float_vector


@dataclass(frozen=True)
class Dataset:
    """Design matrix plus response for the regression likelihoods.

    ``centered`` marks that the response has had its mean removed and every
    column of ``X`` sums to zero, which is the form the marginalized-intercept
    Gaussian likelihood expects.  The flag only changes likelihood constants;
    solvers accept uncentered data as well.
    """

    X: np.ndarray
    y: np.ndarray
    centered: bool = False

    def __post_init__(self):
        X = as_float_matrix(self.X, "X")
        y = as_float_vector(self.y, "y")
        n, p = X.shape
        if n < 1 or p < 1:
            raise DimensionError("X must have at least one row and one column")
        if y.size != n:
            raise DimensionError(f"y has length {y.size}, X has {n} rows")
        if self.centered:
            if abs(y.sum()) > 1e-8:
                raise DomainError("centered dataset has a response that does not sum to 0")
            col_sums = np.abs(X.sum(axis=0))
            if col_sums.max() > 1e-8:
                raise DomainError("centered dataset has columns that do not sum to 0")
        Xf = X.copy()
        yf = y.copy()
        Xf.setflags(write=False)
        yf.setflags(write=False)
        object.__setattr__(self, "X", Xf)
        object.__setattr__(self, "y", yf)

    @classmethod
    def from_arrays(cls, X, y, center=False):
        X = as_float_matrix(X, "X")
        y = as_float_vector(y, "y")
        if center:
            X = X - X.mean(axis=0)
            y = y - y.mean()
        return cls(X, y, centered=center)

    @property
    def n(self):
        return self.X.shape[0]

    @property
    def p(self):
        return self.X.shape[1]


@dataclass(frozen=True)
class SolverOptions:
    """Iteration controls shared by all inner solvers.

    ``tol`` bounds the sup-norm parameter change per sweep or accepted step;
    ``max_iter`` caps sweeps (coordinate descent) or accepted proximal steps.
    The proximal line search starts at ``step_init`` and multiplies by
    ``step_shrink`` until sufficient decrease holds.
    """

    tol: float = 1e-8
    max_iter: int = 10000
    step_init: float = 1.0
    step_shrink: float = 0.5
    record_objective: bool = False

    def __post_init__(self):
        if not self.tol > 0:
            raise DomainError("tol must be positive")
        if self.max_iter < 1:
            raise DomainError("max_iter must be at least 1")
        if not 0 < self.step_shrink < 1 or not self.step_init > 0:
            raise DomainError("invalid line-search parameters")


@dataclass
class SolverResult:
    """Solution plus convergence diagnostics for one inner solve."""

    beta: np.ndarray
    converged: bool
    n_iter: int
    kkt_residual: float
    objective_sweeps: list = field(default_factory=list)
    message: str = ""


@dataclass
class PrecisionEstimate:
    """Symmetric positive-definite precision matrix with solve diagnostics."""

    omega: np.ndarray
    converged: bool
    n_iter: int
    kkt_residual: float
    covariance: np.ndarray | None = None
    message: str = ""


def _weights_vector(w, p, kind="coordinate"):
    if isinstance(w, WeightSet):
        if kind == "coordinate":
            w = w.per_coordinate()
        else:
            if w.kind not in ("group", "shared"):
                raise ConfigurationError("expected per-group weights")
            w = w.values
    w = np.asarray(w, dtype=float)
    if w.shape != (p,):
        raise DimensionError(f"weights have shape {w.shape}, expected ({p},)")
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise DomainError("weights must be finite and non-negative")
    return w


# ---------------------------------------------------------------------------
# Proximal operators
# ---------------------------------------------------------------------------

def soft_threshold(z, gamma):
    """sign(z) * max(|z| - gamma, 0), elementwise."""
    if np.any(np.asarray(gamma) < 0):
        raise DomainError("threshold must be non-negative")
    return np.sign(z) * np.maximum(np.abs(z) - gamma, 0.0)


def group_soft_threshold(z, gamma):
    """Shrink the whole vector toward zero: z * max(0, 1 - gamma/||z||)."""
    if gamma < 0:
        raise DomainError("threshold must be non-negative")
    z = np.asarray(z, dtype=float)
    norm = np.linalg.norm(z)
    if norm <= gamma:
        return np.zeros_like(z)
    return z * (1.0 - gamma / norm)


# ---------------------------------------------------------------------------
# Stationarity residuals (recomputed from scratch; shared by solvers & tests)
# ---------------------------------------------------------------------------

def kkt_residual_l1(gradient, beta, w):
    """Max violation of the subgradient conditions for sum_j w_j |beta_j|."""
    gradient = np.asarray(gradient, dtype=float)
    res = np.where(
        beta == 0.0,
        np.maximum(np.abs(gradient) - w, 0.0),
        np.abs(gradient + w * np.sign(beta)),
    )
    return float(res.max(initial=0.0))

def kkt_residual_group(gradient, beta, groups, w):
    """Max violation of the blockwise conditions for sum_i w_i ||beta_Gi||."""
    worst = 0.0
    for i, g in enumerate(groups.indices):
        gg = gradient[g]
        bg = beta[g]
        norm = np.linalg.norm(bg)
        if norm == 0.0:
            worst = max(worst, max(np.linalg.norm(gg) - w[i], 0.0))
        else:
            worst = max(worst, np.linalg.norm(gg + w[i] * bg / norm))
    return float(worst)


# ---------------------------------------------------------------------------
# Weighted lasso via cyclic coordinate descent (Gram form)
# ---------------------------------------------------------------------------

def _gram_objective(A, r, w, beta):
    return 0.5 * beta @ A @ beta - r @ beta + np.sum(w * np.abs(beta))


def _cd_gram(A, r, w, opts, beta0=None):
    """Minimize 0.5 b'Ab - r'b + sum w|b| by cyclic coordinate descent.

    A must be symmetric PSD.  Updates are exact per-coordinate minimizers,
    so the objective never increases.
    """
    p = r.size
    beta = np.zeros(p) if beta0 is None else np.array(beta0, dtype=float)
    diag = np.diag(A).copy()
    grad = A @ beta - r  # kept in sync with beta
    sweeps = []
    converged = False
    kkt = np.inf
    it = 0
    for it in range(1, opts.max_iter + 1):
        delta_max = 0.0
        for j in range(p):
            if diag[j] <= 0.0:
                if beta[j] != 0.0:
                    grad -= A[:, j] * beta[j]
                    beta[j] = 0.0
                continue
            bj_old = beta[j]
            rho = bj_old * diag[j] - grad[j]  # = r_j - sum_{l != j} A_jl beta_l
            bj_new = soft_threshold(rho, w[j]) / diag[j]
            if bj_new != bj_old:
                grad += A[:, j] * (bj_new - bj_old)
                beta[j] = bj_new
                delta_max = max(delta_max, abs(bj_new - bj_old))
        if opts.record_objective:
            sweeps.append(_gram_objective(A, r, w, beta))
        if delta_max < opts.tol:
            kkt = kkt_residual_l1(A @ beta - r, beta, w)
            if kkt <= 5.0 * opts.tol:
                converged = True
                break
    if not converged:
        kkt = kkt_residual_l1(A @ beta - r, beta, w)
    return SolverResult(beta, converged, it, kkt, sweeps)


def weighted_l1_linear(data, w, v, opts=SolverOptions(), beta0=None):
    """Minimize (v/2)||y - X b||^2 + sum_j w_j |b_j| by coordinate descent."""
    if not v > 0:
        raise DomainError("v must be positive")
    w = _weights_vector(w, data.p)
    A = v * (data.X.T @ data.X)
    r = v * (data.X.T @ data.y)
    res = _cd_gram(A, r, w, opts, beta0=beta0)
    if not res.converged:
        res.message = "coordinate descent reached max_iter without converging"
    return res


def weighted_l2_linear(data, w, v):
    """Closed-form minimizer of (v/2)||y - X b||^2 + sum_j w_j b_j^2."""
    if not v > 0:
        raise DomainError("v must be positive")
    w = _weights_vector(w, data.p)
    A = v * (data.X.T @ data.X) + 2.0 * np.diag(w)
    rhs = v * (data.X.T @ data.y)
    try:
        beta = np.linalg.solve(A, rhs)
    except np.linalg.LinAlgError as exc:  # w > 0 makes A PD; w = 0 may not
        raise InternalError(f"ridge system unexpectedly singular: {exc}") from exc
    kkt = float(np.max(np.abs(A @ beta - rhs), initial=0.0))
    return SolverResult(beta, True, 1, kkt)


# ---------------------------------------------------------------------------
# Logistic regression with weighted l1 penalty (proximal gradient)
# ---------------------------------------------------------------------------

def _logistic_loss_grad(X, y, beta, jeffreys=False):
    """Negative log-likelihood (and optional Jeffreys term) with gradient."""
    z = X @ beta
    yz = y * z
    loss = float(np.sum(np.logaddexp(0.0, -yz)))
    sig = _expit(-yz)  # P(misclassify margin) = 1/(1+e^{yz})
    grad = -(X.T @ (y * sig))
    if jeffreys:
        jl, jg = _jeffreys_term_grad(X, z)
        loss += jl
        grad += jg
    return loss, grad


def _expit(t):
    out = np.empty_like(t)
    pos = t >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-t[pos]))
    e = np.exp(t[~pos])
    out[~pos] = e / (1.0 + e)
    return out


def _jeffreys_term_grad(X, z):
    """(1/2) log|X'VX| and its gradient, V diagonal logistic variance."""
    s = _expit(z)
    vdiag = s * (1.0 - s)
    M = X.T @ (vdiag[:, None] * X)
    sign, logdet = np.linalg.slogdet(M)
    if sign <= 0:
        raise RankDeficiencyError("X'VX is singular in the Jeffreys correction")
    Minv = np.linalg.inv(M)
    h = np.einsum("ij,jk,ik->i", X, Minv, X)
    coeff = 0.5 * h * vdiag * (1.0 - 2.0 * s)
    return 0.5 * logdet, X.T @ coeff


def logistic_jeffreys_logdet(X, beta):
    """(1/2) log det(X'VX) with v_ii the logistic variance at X beta."""
    X = as_float_matrix(X, "X")
    beta = as_float_vector(beta, "beta")
    if beta.size != X.shape[1]:
        raise DimensionError("beta length does not match X")
    value, _ = _jeffreys_term_grad(X, X @ beta)
    return float(value)


def weighted_l1_logistic(data, w, jeffreys=False, opts=SolverOptions(), beta0=None):
    """Penalized logistic fit: minimize the negative log-likelihood (plus the
    Jeffreys log-determinant when requested) with penalty sum_j w_j |b_j|.

    Labels must be in {-1, +1}.  Without the Jeffreys term and with positive
    weights the problem is convex; with it the result is a stationary point.
    """
    y = data.y
    if not np.all(np.isin(y, (-1.0, 1.0))):
        raise DomainError("logistic labels must be -1 or +1")
    w = _weights_vector(w, data.p)
    X = data.X

    def smooth(beta):
        return _logistic_loss_grad(X, y, beta, jeffreys=jeffreys)

    def prox(zv, t):
        return soft_threshold(zv, t * w)

    def kkt(grad, beta):
        return kkt_residual_l1(grad, beta, w)

    def penalty(beta):
        return float(np.sum(w * np.abs(beta)))

    res = _prox_solve(smooth, prox, kkt, penalty, data.p, opts, beta0)
    if not res.converged:
        res.message = "proximal gradient reached max_iter without converging"
    return res


def _prox_solve(smooth, prox, kkt, penalty, p, opts, beta0):
    """Monotone proximal gradient with backtracking and a carried step size.

    ``smooth(beta)`` returns (value, gradient); ``prox(z, t)`` applies the
    scaled proximal operator; ``kkt(gradient, beta)`` recomputes the fresh
    stationarity residual.

    The sufficient-decrease comparison cancels catastrophically once the
    per-step progress margin drops to float noise, so the step is validated
    by backtracking only while that margin is resolvable; after that the last
    accepted step is frozen (re-validation resumes if a decrease violation
    well above the noise floor shows up).
    """
    beta = np.zeros(p) if beta0 is None else np.array(beta0, dtype=float)
    f, g = smooth(beta)
    step = opts.step_init
    sweeps = []
    converged = False
    kkt_res = np.inf
    testing = True
    it = 0
    for it in range(1, opts.max_iter + 1):
        noise = 8.0 * np.finfo(float).eps * max(1.0, abs(f))
        if testing:
            step = min(step * 2.0, opts.step_init)
            while True:
                cand = prox(beta - step * g, step)
                diff = cand - beta
                f_cand, g_cand = smooth(cand)
                margin = f + g @ diff + 0.5 * (diff @ diff) / step - f_cand
                if margin >= -noise:
                    break
                step *= opts.step_shrink
                if step < 1e-18:
                    raise InternalError("line search step underflow")
            if 0.5 * (diff @ diff) / step <= 8.0 * noise:
                testing = False
        else:
            cand = prox(beta - step * g, step)
            diff = cand - beta
            f_cand, g_cand = smooth(cand)
            margin = f + g @ diff + 0.5 * (diff @ diff) / step - f_cand
            if margin < -1e3 * noise:
                testing = True
                step *= opts.step_shrink
                continue
        delta = float(np.max(np.abs(diff), initial=0.0))
        beta, f, g = cand, f_cand, g_cand
        if opts.record_objective:
            sweeps.append(f + penalty(beta))
        if delta < opts.tol:
            kkt_res = kkt(g, beta)
            if kkt_res <= 5.0 * opts.tol:
                converged = True
                break
    if not converged:
        kkt_res = kkt(g, beta)
    return SolverResult(beta, converged, it, kkt_res, sweeps)


def weighted_group_linear(data, groups, w, v, opts=SolverOptions(), beta0=None):
    """Minimize (v/2)||y - X b||^2 + sum_i w_i ||b_Gi||_2 by proximal gradient."""
    if not v > 0:
        raise DomainError("v must be positive")
    if not isinstance(groups, GroupStructure):
        raise ConfigurationError("weighted_group_linear requires a GroupStructure")
    if groups.n_coordinates != data.p:
        raise DimensionError("group structure does not cover all columns")
    w = _weights_vector(w, groups.n_groups, kind="group")
    X, y = data.X, data.y
    G = v * (X.T @ X)
    r = v * (X.T @ y)
    const = 0.5 * v * float(y @ y)

    def smooth(beta):
        g = G @ beta - r
        f = 0.5 * beta @ (G @ beta) - r @ beta + const
        return f, g

    def prox(zv, t):
        out = np.empty_like(zv)
        for i, gidx in enumerate(groups.indices):
            out[gidx] = group_soft_threshold(zv[gidx], t * w[i])
        return out

    def kkt(grad, beta):
        return kkt_residual_group(grad, beta, groups, w)

    def penalty(beta):
        return float(sum(w[i] * np.linalg.norm(beta[g]) for i, g in enumerate(groups.indices)))

    res = _prox_solve(smooth, prox, kkt, penalty, data.p, opts, beta0)
    if not res.converged:
        res.message = "proximal gradient reached max_iter without converging"
    return res
