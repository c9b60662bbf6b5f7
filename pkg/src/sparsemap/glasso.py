"""Weighted graphical lasso with a Jeffreys-corrected log-det coefficient.

Solves, over symmetric positive-definite ``omega``,

    maximize  c * log|omega| - (n/2) tr(S omega) - sum_{i<=j} W_ij |omega_ij|

with ``c = (n - p - 1) / 2``, the coefficient that makes the estimate
invariant under reparametrization.  Dividing through by ``c`` turns this into
a standard weighted graphical lasso: effective covariance ``(n/(n-p-1)) S``
with diagonal weights folded into it (diagonal entries of a PD matrix are
positive, so their penalty is linear), and elementwise off-diagonal bounds
``W_ij / (2c)``.  That problem is solved by block coordinate descent over
columns, each column a weighted lasso in Gram form.
"""
from __future__ import annotations

import numpy as np

from .exceptions import DomainError, InternalError
from .priors import WeightSet
from .solvers import PrecisionEstimate, SolverOptions, _cd_gram
from .validation import check_symmetric


def _weights_matrix(W, p):
    if isinstance(W, WeightSet):
        if W.kind != "matrix":
            raise DomainError("weighted_glasso expects matrix weights")
        W = W.values
    W = check_symmetric(W, "W", tol=1e-10)
    if W.shape != (p, p):
        raise DomainError(f"W has shape {W.shape}, expected ({p},{p})")
    if np.any(W < 0) or not np.all(np.isfinite(W)):
        raise DomainError("W must be finite and non-negative")
    return W


def scaled_glasso_inputs(S, n, W):
    """Covariance-with-folded-diagonal and off-diagonal bounds of the
    c-rescaled problem; also returns c."""
    p = S.shape[0]
    c = (n - p - 1) / 2.0
    S_eff = (n / (n - p - 1.0)) * S
    S2 = S_eff + np.diag(np.diag(W) / c)
    P = W / (2.0 * c)
    np.fill_diagonal(P, 0.0)
    return S2, P, c


def glasso_kkt_residual(omega, S2, P):
    """Stationarity violation of the rescaled problem at ``omega``.

    Conditions: (omega^-1)_ii = S2_ii on the diagonal; off the diagonal
    |S2_ij - (omega^-1)_ij| <= P_ij where omega_ij = 0 and
    (omega^-1)_ij = S2_ij + P_ij sign(omega_ij) elsewhere.
    """
    R = np.linalg.inv(omega) - S2
    off = ~np.eye(omega.shape[0], dtype=bool)
    viol = np.abs(np.diag(R)).max(initial=0.0)
    zero = off & (omega == 0.0)
    act = off & (omega != 0.0)
    if zero.any():
        viol = max(viol, float(np.maximum(np.abs(R[zero]) - P[zero], 0.0).max()))
    if act.any():
        viol = max(viol, float(np.abs(R[act] + P[act] * np.sign(omega[act])).max()))
    return viol


def weighted_glasso(S, n, W, opts=SolverOptions(), omega_init=None):
    """Precision-matrix estimate under entrywise weighted l1 penalties.

    Parameters
    ----------
    S : (p, p) array
        Sample covariance, symmetric positive semidefinite.
    n : int
        Sample count behind S; must exceed p + 1 so the log-det coefficient
        stays positive.
    W : (p, p) array or matrix WeightSet
        Symmetric non-negative penalty weights for entries i <= j
        (the diagonal included).
    omega_init : (p, p) array, optional
        Warm start; only its column ratios are reused.
    """
    S = check_symmetric(S, "S", tol=1e-8)
    p = S.shape[0]
    if n <= p + 1:
        raise DomainError(f"need n > p + 1 for a positive log-det coefficient (n={n}, p={p})")
    W = _weights_matrix(W, p)
    S2, P, _ = scaled_glasso_inputs(S, n, W)

    if p == 1:
        omega = np.array([[1.0 / S2[0, 0]]])
        return PrecisionEstimate(omega, True, 0, 0.0, covariance=S2.copy())

    # gammas[:, j] holds the negated, rescaled off-diagonal of column j
    gammas = np.zeros((p - 1, p))
    if omega_init is not None:
        omega_init = check_symmetric(omega_init, "omega_init", tol=1e-8)
        for j in range(p):
            others = np.delete(np.arange(p), j)
            gammas[:, j] = -omega_init[others, j] / omega_init[j, j]

    W_cov = S2.copy()
    inner_opts = SolverOptions(tol=opts.tol, max_iter=opts.max_iter)
    idx = np.arange(p)
    converged = False
    kkt = np.inf
    omega = None
    it = 0
    for it in range(1, opts.max_iter + 1):
        W_prev = W_cov.copy()
        for j in range(p):
            others = idx[idx != j]
            A = W_cov[np.ix_(others, others)]
            col = _cd_gram(A, S2[others, j], P[others, j], inner_opts, beta0=gammas[:, j])
            gammas[:, j] = col.beta
            w12 = A @ col.beta
            W_cov[others, j] = w12
            W_cov[j, others] = w12
        delta = float(np.max(np.abs(W_cov - W_prev)))
        omega = _reconstruct_precision(W_cov, gammas)
        if delta < opts.tol:
            kkt = glasso_kkt_residual(omega, S2, P)
            if kkt <= 5.0 * opts.tol and _min_eig(omega) > 0.0:
                converged = True
                break
    if omega is None:
        omega = _reconstruct_precision(W_cov, gammas)
    if not converged:
        kkt = glasso_kkt_residual(omega, S2, P)
    if _min_eig(omega) <= 0.0:
        raise InternalError("graphical lasso lost positive definiteness")
    msg = "" if converged else "block coordinate descent reached max_iter"
    return PrecisionEstimate(omega, converged, it, kkt, covariance=W_cov, message=msg)


def _min_eig(omega):
    return float(np.linalg.eigvalsh(omega)[0])


def _reconstruct_precision(W_cov, gammas):
    """Assemble omega from column solutions; exact zeros are preserved."""
    p = W_cov.shape[0]
    idx = np.arange(p)
    omega = np.zeros((p, p))
    for j in range(p):
        others = idx[idx != j]
        gj = gammas[:, j]
        denom = W_cov[j, j] - W_cov[others, j] @ gj
        if denom <= 0:
            raise InternalError("graphical lasso produced a non-positive Schur complement")
        theta_jj = 1.0 / denom
        omega[j, j] = theta_jj
        omega[others, j] += -gj * theta_jj / 2.0
        omega[j, others] += -gj * theta_jj / 2.0
    return omega
