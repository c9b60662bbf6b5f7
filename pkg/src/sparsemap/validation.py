"""Input validation helpers shared across modules."""
from __future__ import annotations

import numpy as np

from .exceptions import DimensionError, DomainError


def as_float_vector(x, name="x"):
    """Coerce to a 1-D float64 array, rejecting non-finite entries."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1:
        raise DimensionError(f"{name} must be 1-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains non-finite entries")
    return arr


def as_float_matrix(x, name="X"):
    """Coerce to a 2-D float64 array, rejecting non-finite entries."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains non-finite entries")
    return arr


def check_length(x, expected, name="x"):
    if len(x) != expected:
        raise DimensionError(f"{name} has length {len(x)}, expected {expected}")


def check_positive(value, name="value"):
    if not np.all(np.asarray(value) > 0):
        raise DomainError(f"{name} must be strictly positive")


def check_symmetric(A, name="matrix", tol=1e-10):
    A = as_float_matrix(A, name)
    if A.shape[0] != A.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {A.shape}")
    if np.max(np.abs(A - A.T), initial=0.0) > tol:
        raise DomainError(f"{name} is not symmetric within tolerance {tol}")
    return A
