"""Hierarchical sparsity priors: specifications, EM weights, and densities.

The priors here share one construction: a Laplace or exponential-power
distribution on each coefficient (or coefficient group, or precision-matrix
entry) whose scale carries an inverse-gamma hyperprior.  Marginalizing the
scale yields a heavy-tailed generalized-t density, and conditioning on the
current iterate yields closed-form expectations of the inverse scale.  Those
expectations are the penalty weights consumed by the inner solvers.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .exceptions import (
    ConfigurationError,
    DimensionError,
    DomainError,
    InfeasibleMomentsError,
    MomentUndefinedError,
)
from .validation import as_float_vector, check_positive, check_symmetric

PER_COORDINATE = "per-coordinate"
GROUPED = "grouped"
SHARED_GROUPS = "shared-groups"
MATRIX = "matrix"

_VARIANTS = (PER_COORDINATE, GROUPED, SHARED_GROUPS, MATRIX)


def _frozen(arr):
    arr = np.array(arr, dtype=float, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class GroupStructure:
    """Partition of coordinates 0..p-1 into K non-empty groups."""

    indices: tuple  # tuple of index arrays, one per group

    def __post_init__(self):
        if not self.indices:
            raise ConfigurationError("group structure needs at least one group")
        groups = tuple(np.asarray(g, dtype=int) for g in self.indices)
        seen = np.concatenate(groups) if groups else np.array([], dtype=int)
        p = seen.size
        if p == 0:
            raise ConfigurationError("group structure covers no coordinates")
        if np.any([g.size == 0 for g in groups]):
            raise ConfigurationError("every group must be non-empty")
        if sorted(seen.tolist()) != list(range(p)):
            raise ConfigurationError(
                "groups must partition coordinates 0..p-1 with no gaps or repeats"
            )
        object.__setattr__(self, "indices", tuple(_frozen_int(g) for g in groups))

    @classmethod
    def from_lists(cls, lists):
        return cls(tuple(np.asarray(g, dtype=int) for g in lists))

    @classmethod
    def contiguous(cls, p, size):
        """Groups {0..size-1}, {size..2*size-1}, ... covering p coordinates."""
        if p % size != 0:
            raise ConfigurationError(f"p={p} is not divisible by group size {size}")
        return cls.from_lists([range(i, i + size) for i in range(0, p, size)])

    @property
    def n_groups(self):
        return len(self.indices)

    @property
    def n_coordinates(self):
        return sum(g.size for g in self.indices)

    @property
    def sizes(self):
        return np.array([g.size for g in self.indices])

    def assignment(self):
        """Coordinate index -> group index map as an integer array."""
        out = np.empty(self.n_coordinates, dtype=int)
        for i, g in enumerate(self.indices):
            out[g] = i
        return out

    def expand(self, per_group):
        """Replicate a per-group vector onto coordinates."""
        per_group = np.asarray(per_group, dtype=float)
        if per_group.size != self.n_groups:
            raise DimensionError(
                f"expected {self.n_groups} per-group values, got {per_group.size}"
            )
        return per_group[self.assignment()]


def _frozen_int(arr):
    arr = np.array(arr, dtype=int, copy=True)
    arr.setflags(write=False)
    return arr


def _broadcast_hyper(value, length, overrides, which, name):
    """Scalar-or-vector hyperparameter with optional per-index overrides."""
    arr = np.asarray(value, dtype=float)
    if arr.ndim == 0:
        arr = np.full(length, float(arr))
    else:
        arr = arr.astype(float).copy()
        if arr.shape != (length,):
            raise DimensionError(f"{name} has shape {arr.shape}, expected ({length},)")
    if overrides:
        for idx, pair in overrides.items():
            if not 0 <= int(idx) < length:
                raise DimensionError(f"override index {idx} out of range for length {length}")
            arr[int(idx)] = float(pair[which])
    return arr


@dataclass(frozen=True)
class PriorSpec:
    """Variant-tagged hyperparameters of a hierarchical sparsity prior.

    ``a`` and ``b`` are the inverse-gamma shape and scale vectors: one entry
    per coordinate (per-coordinate variant), per group (grouped and
    shared-groups variants), or per upper-triangle matrix entry (matrix
    variant, row-major order over i <= j).  ``q`` is the exponential-power
    exponent; the grouped and matrix hierarchies only exist for q = 1.
    """

    variant: str
    a: np.ndarray
    b: np.ndarray
    q: float = 1.0
    groups: GroupStructure | None = None

    def __post_init__(self):
        if self.variant not in _VARIANTS:
            raise ConfigurationError(f"unknown prior variant {self.variant!r}")
        a = as_float_vector(self.a, "a")
        b = as_float_vector(self.b, "b")
        if a.shape != b.shape:
            raise DimensionError("a and b must have the same length")
        check_positive(a, "a")
        check_positive(b, "b")
        if not self.q > 0:
            raise DomainError("q must be strictly positive")
        if self.variant in (GROUPED, MATRIX) and self.q != 1.0:
            raise ConfigurationError(f"{self.variant} prior requires q = 1")
        if self.variant in (GROUPED, SHARED_GROUPS):
            if self.groups is None:
                raise ConfigurationError(f"{self.variant} prior requires a group structure")
            if a.size != self.groups.n_groups:
                raise DimensionError(
                    f"expected {self.groups.n_groups} hyperparameter entries, got {a.size}"
                )
        object.__setattr__(self, "a", _frozen(a))
        object.__setattr__(self, "b", _frozen(b))
        object.__setattr__(self, "q", float(self.q))

    # -- constructors -------------------------------------------------

    @classmethod
    def per_coordinate(cls, p, a, b, q=1.0, overrides=None):
        """Independent prior per coordinate; scalars broadcast to length p.

        ``overrides`` maps coordinate index -> (a, b) for coordinate-specific
        settings layered over the broadcast values.
        """
        return cls(
            PER_COORDINATE,
            _broadcast_hyper(a, p, overrides, 0, "a"),
            _broadcast_hyper(b, p, overrides, 1, "b"),
            q=q,
        )

    @classmethod
    def grouped(cls, groups, a, b, overrides=None):
        """One scale per group, l2-norm coupling inside each group (q = 1)."""
        k = groups.n_groups
        return cls(
            GROUPED,
            _broadcast_hyper(a, k, overrides, 0, "a"),
            _broadcast_hyper(b, k, overrides, 1, "b"),
            q=1.0,
            groups=groups,
        )

    @classmethod
    def shared_groups(cls, groups, a, b, q=1.0, overrides=None):
        """One scale shared by all coordinates of each group (power penalty)."""
        k = groups.n_groups
        return cls(
            SHARED_GROUPS,
            _broadcast_hyper(a, k, overrides, 0, "a"),
            _broadcast_hyper(b, k, overrides, 1, "b"),
            q=q,
            groups=groups,
        )

    @classmethod
    def shared_single(cls, p, a, b, q=1.0):
        """All p coordinates share one scale (the K = 1 special case)."""
        return cls.shared_groups(GroupStructure.contiguous(p, p), a, b, q=q)

    @classmethod
    def matrix(cls, p, a, b, overrides=None):
        """Entrywise prior on a symmetric p x p matrix, one pair per i <= j.

        ``overrides`` maps (i, j) with i <= j to (a, b).
        """
        m = p * (p + 1) // 2
        idx = {}
        if overrides:
            rows, cols = np.triu_indices(p)
            flat = {(int(i), int(j)): k for k, (i, j) in enumerate(zip(rows, cols))}
            for (i, j), pair in overrides.items():
                i, j = (int(i), int(j)) if i <= j else (int(j), int(i))
                if (i, j) not in flat:
                    raise DimensionError(f"override index ({i},{j}) out of range for p={p}")
                idx[flat[(i, j)]] = pair
        spec = cls(
            MATRIX,
            _broadcast_hyper(a, m, idx, 0, "a"),
            _broadcast_hyper(b, m, idx, 1, "b"),
            q=1.0,
        )
        object.__setattr__(spec, "_matrix_p", p)
        return spec

    # -- helpers ------------------------------------------------------

    @property
    def n_coordinates(self):
        if self.variant == PER_COORDINATE:
            return self.a.size
        if self.variant in (GROUPED, SHARED_GROUPS):
            return self.groups.n_coordinates
        raise ConfigurationError("matrix priors have no coordinate count")

    @property
    def matrix_dim(self):
        if self.variant != MATRIX:
            raise ConfigurationError("matrix_dim only applies to matrix priors")
        return getattr(self, "_matrix_p", _dim_from_triangle(self.a.size))

    def a_matrix(self):
        return _square_from_triangle(self.a, self.matrix_dim)

    def b_matrix(self):
        return _square_from_triangle(self.b, self.matrix_dim)


def _dim_from_triangle(m):
    p = int(round((np.sqrt(8 * m + 1) - 1) / 2))
    if p * (p + 1) // 2 != m:
        raise DimensionError(f"{m} entries do not fill an upper triangle")
    return p


def _square_from_triangle(tri, p):
    out = np.zeros((p, p))
    rows, cols = np.triu_indices(p)
    out[rows, cols] = tri
    out[cols, rows] = tri
    return out


@dataclass(frozen=True)
class NoiseModel:
    """Observation-noise model for the linear likelihood."""

    variant: str  # "fixed" or "inverse-gamma"
    delta2: float | None = None
    a_delta: float | None = None
    b_delta: float | None = None

    def __post_init__(self):
        if self.variant == "fixed":
            if self.delta2 is None or not self.delta2 > 0:
                raise DomainError("fixed noise requires delta2 > 0")
        elif self.variant == "inverse-gamma":
            if self.a_delta is None or not self.a_delta > 0:
                raise DomainError("inverse-gamma noise requires a_delta > 0")
            if self.b_delta is None or not self.b_delta > 0:
                raise DomainError("inverse-gamma noise requires b_delta > 0")
        else:
            raise ConfigurationError(f"unknown noise variant {self.variant!r}")

    @classmethod
    def fixed(cls, delta2):
        return cls("fixed", delta2=float(delta2))

    @classmethod
    def inverse_gamma(cls, a_delta, b_delta):
        return cls("inverse-gamma", a_delta=float(a_delta), b_delta=float(b_delta))


@dataclass(frozen=True)
class WeightSet:
    """Penalty weights produced by an E-step; always finite and positive.

    ``kind`` is one of ``"coordinate"`` (length-p vector), ``"group"`` or
    ``"shared"`` (length-K vector), or ``"matrix"`` (symmetric p x p array).
    """

    kind: str
    values: np.ndarray
    groups: GroupStructure | None = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if not np.all(np.isfinite(values)) or not np.all(values > 0):
            raise DomainError("weights must be finite and strictly positive")
        if self.kind == "matrix":
            values = check_symmetric(values, "matrix weights", tol=1e-10)
        elif values.ndim != 1:
            raise DimensionError("non-matrix weights must be a vector")
        if self.kind in ("group", "shared") and self.groups is None:
            raise ConfigurationError(f"{self.kind} weights require a group structure")
        object.__setattr__(self, "values", _frozen(values))

    def per_coordinate(self):
        """Expand to one weight per coordinate (replicating group weights)."""
        if self.kind == "coordinate":
            return self.values
        if self.kind in ("group", "shared"):
            return self.groups.expand(self.values)
        raise ConfigurationError("matrix weights have no per-coordinate form")


# ---------------------------------------------------------------------------
# E-step weight updates
# ---------------------------------------------------------------------------

def coordinate_weights(beta, prior):
    """Per-coordinate weights (a_j + 1/q) / (b_j + |beta_j|^q)."""
    if prior.variant != PER_COORDINATE:
        raise ConfigurationError("coordinate_weights requires a per-coordinate prior")
    beta = as_float_vector(beta, "beta")
    if beta.size != prior.a.size:
        raise DimensionError(f"beta has length {beta.size}, prior expects {prior.a.size}")
    q = prior.q
    w = (prior.a + 1.0 / q) / (prior.b + np.abs(beta) ** q)
    return WeightSet("coordinate", w)


def group_weights(beta, prior):
    """Per-group weights (a_i + n_i) / (b_i + ||beta_{G_i}||_2)."""
    if prior.variant != GROUPED:
        raise ConfigurationError("group_weights requires a grouped prior")
    beta = as_float_vector(beta, "beta")
    groups = prior.groups
    if beta.size != groups.n_coordinates:
        raise DimensionError(
            f"beta has length {beta.size}, groups cover {groups.n_coordinates}"
        )
    norms = np.array([np.linalg.norm(beta[g]) for g in groups.indices])
    w = (prior.a + groups.sizes) / (prior.b + norms)
    return WeightSet("group", w, groups=groups)


def shared_group_weights(beta, prior):
    """Per-group weights (a_i + n_i/q) / (b_i + sum_{j in G_i} |beta_j|^q)."""
    if prior.variant != SHARED_GROUPS:
        raise ConfigurationError("shared_group_weights requires a shared-groups prior")
    if not prior.q > 0:
        raise DomainError("q must be positive")
    beta = as_float_vector(beta, "beta")
    groups = prior.groups
    if beta.size != groups.n_coordinates:
        raise DimensionError(
            f"beta has length {beta.size}, groups cover {groups.n_coordinates}"
        )
    q = prior.q
    sums = np.array([np.sum(np.abs(beta[g]) ** q) for g in groups.indices])
    w = (prior.a + groups.sizes / q) / (prior.b + sums)
    return WeightSet("shared", w, groups=groups)


def precision_weights(omega, prior):
    """Symmetric matrix weights (a_ij + 1) / (b_ij + |omega_ij|)."""
    if prior.variant != MATRIX:
        raise ConfigurationError("precision_weights requires a matrix prior")
    omega = check_symmetric(omega, "omega", tol=1e-10)
    p = prior.matrix_dim
    if omega.shape != (p, p):
        raise DimensionError(f"omega has shape {omega.shape}, prior expects ({p},{p})")
    w = (prior.a_matrix() + 1.0) / (prior.b_matrix() + np.abs(omega))
    w = (w + w.T) / 2.0  # exact symmetry despite rounding
    return WeightSet("matrix", w)


def noise_weight(rss, n, noise):
    """Expected inverse noise variance given the residual sum of squares."""
    if noise.variant != "inverse-gamma":
        raise ConfigurationError("noise_weight applies to inverse-gamma noise only")
    if rss < 0:
        raise DomainError("rss must be non-negative")
    if n < 2:
        raise DomainError("noise_weight requires n >= 2")
    return (noise.a_delta + (n - 1) / 2.0) / (noise.b_delta + rss / 2.0)


# ---------------------------------------------------------------------------
# Marginal prior densities (for objective traces)
# ---------------------------------------------------------------------------

def log_marginal_prior(point, prior):
    """Exact log marginal prior density, normalizing constants included.

    ``point`` is a coefficient vector for the vector variants or a symmetric
    matrix for the matrix variant.
    """
    if prior.variant == PER_COORDINATE:
        beta = as_float_vector(point, "point")
        if beta.size != prior.a.size:
            raise DimensionError("point length does not match prior")
        return float(np.sum(_ep_ig_logpdf(np.abs(beta), prior.a, prior.b, prior.q)))

    if prior.variant == GROUPED:
        beta = as_float_vector(point, "point")
        groups = prior.groups
        if beta.size != groups.n_coordinates:
            raise DimensionError("point length does not match group structure")
        total = 0.0
        for i, g in enumerate(groups.indices):
            n_i = g.size
            a_i, b_i = prior.a[i], prior.b[i]
            norm = np.linalg.norm(beta[g])
            total += (
                -n_i * np.log(2.0 * b_i)
                - (n_i - 1) / 2.0 * np.log(np.pi)
                + gammaln(n_i + a_i)
                - gammaln((n_i + 1) / 2.0)
                - gammaln(a_i)
                - (a_i + n_i) * np.log1p(norm / b_i)
            )
        return float(total)

    if prior.variant == SHARED_GROUPS:
        beta = as_float_vector(point, "point")
        groups = prior.groups
        if beta.size != groups.n_coordinates:
            raise DimensionError("point length does not match group structure")
        q = prior.q
        total = 0.0
        for i, g in enumerate(groups.indices):
            n_i = g.size
            a_i, b_i = prior.a[i], prior.b[i]
            s = np.sum(np.abs(beta[g]) ** q)
            total += (
                gammaln(a_i + n_i / q)
                - gammaln(a_i)
                - n_i * np.log(2.0)
                - n_i * gammaln(1.0 + 1.0 / q)
                - (n_i / q) * np.log(b_i)
                - (a_i + n_i / q) * np.log1p(s / b_i)
            )
        return float(total)

    if prior.variant == MATRIX:
        omega = check_symmetric(point, "point", tol=1e-10)
        p = prior.matrix_dim
        if omega.shape != (p, p):
            raise DimensionError("point shape does not match prior")
        rows, cols = np.triu_indices(p)
        vals = np.abs(omega[rows, cols])
        return float(np.sum(_ep_ig_logpdf(vals, prior.a, prior.b, 1.0)))

    raise ConfigurationError(f"unsupported prior variant {prior.variant!r}")


def _ep_ig_logpdf(absval, a, b, q):
    """Log density of the exponential-power / inverse-gamma marginal.

    Reduces to (a / 2b) (|x|/b + 1)^-(a+1) at q = 1.
    """
    return (
        gammaln(a + 1.0 / q)
        - gammaln(a)
        - gammaln(1.0 + 1.0 / q)
        - np.log(2.0)
        - np.log(b) / q
        - (a + 1.0 / q) * np.log1p(absval**q / b)
    )


# ---------------------------------------------------------------------------
# Hyperparameter moment utilities
# ---------------------------------------------------------------------------

def prior_moment(a, b, q, t):
    """t-th moment of the coefficient magnitude under the marginal prior.

    Only the q = 1 family is supported: |beta| then has the Pareto-type
    density (a/b)(z/b + 1)^-(a+1) whose t-th moment is
    b^t * Gamma(a - t) * Gamma(t + 1) / Gamma(a), defined for a > t.
    """
    check_positive(a, "a")
    check_positive(b, "b")
    check_positive(t, "t")
    if q != 1.0:
        raise ConfigurationError("prior moments are only available for q = 1")
    if a <= t:
        raise MomentUndefinedError(f"moment of order {t} undefined for a = {a} (needs a > t)")
    return float(b**t * np.exp(gammaln(a - t) + gammaln(t + 1.0) - gammaln(a)))


def hyperparams_from_mean_var(mean, var):
    """Invert the q = 1 magnitude moments: find (a, b) with given mean/variance.

    Solves E|beta| = b/(a-1) and Var|beta| = mean^2 * a/(a-2); feasible only
    when var > mean^2 (equivalently a > 2).
    """
    check_positive(mean, "mean")
    check_positive(var, "var")
    if var <= mean**2:
        raise InfeasibleMomentsError(
            f"no hyperparameters give mean={mean} and var={var}: need var > mean^2"
        )
    a = 2.0 * var / (var - mean**2)
    b = mean * (a - 1.0)
    return a, b
