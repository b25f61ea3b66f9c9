"""Input validation helpers shared by the functional API and the estimators."""

import numbers

import numpy as np
from sklearn.utils import check_array

from .exceptions import ValidationError

SYMMETRY_TOL = 1e-12


def check_square(matrix, *, dtype="numeric", name="matrix"):
    """Return ``matrix`` as a 2-d square ndarray or raise ValidationError."""
    try:
        arr = check_array(matrix, dtype=dtype, ensure_2d=True,
                          ensure_min_samples=1, ensure_min_features=1)
    except ValueError as exc:
        raise ValidationError(f"{name}: {exc}") from exc
    if arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {arr.shape}")
    return arr


def check_hermitian(matrix, tol=SYMMETRY_TOL, name="matrix"):
    """Validate a Hermitian (real-symmetric or complex) matrix.

    The tolerance is absolute for matrices with entries of order one and
    scales with the largest entry otherwise.
    """
    arr = np.asarray(matrix)
    if not np.iscomplexobj(arr):
        arr = check_square(arr, dtype=np.float64, name=name)
    else:
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValidationError(f"{name} must be square, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValidationError(f"{name} contains NaN or inf")
        arr = arr.astype(np.complex128)
    scale = max(1.0, float(np.max(np.abs(arr)))) if arr.size else 1.0
    asym = float(np.max(np.abs(arr - arr.conj().T))) if arr.size else 0.0
    if asym > tol * scale:
        raise ValidationError(
            f"{name} is not Hermitian (max |H - H^dagger| = {asym:.3e})")
    return arr


def check_state(psi, dim=None, name="state"):
    """Return ``psi`` as a 1-d complex128 array, optionally checking its length."""
    arr = np.asarray(psi, dtype=np.complex128)
    if arr.ndim != 1:
        raise ValidationError(f"{name} must be 1-d, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise ValidationError(
            f"{name} has dimension {arr.shape[0]}, expected {dim}")
    return arr


def check_index(index, size, name="index"):
    if isinstance(index, bool) or not isinstance(index, numbers.Integral):
        raise ValidationError(f"{name} must be an integer, got {index!r}")
    if not 0 <= index < size:
        raise ValidationError(f"{name} {index} out of range [0, {size})")
    return int(index)


def check_times(times):
    arr = np.atleast_1d(np.asarray(times, dtype=np.float64))
    if arr.ndim != 1:
        raise ValidationError("times must be a scalar or 1-d sequence")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("times must be finite")
    return arr


def check_probability(value, name="probability", *, allow_zero=True):
    value = float(value)
    lower_ok = value >= 0.0 if allow_zero else value > 0.0
    if not (lower_ok and value <= 1.0):
        raise ValidationError(f"{name} must lie in [0, 1], got {value}")
    return value


def time_grid(t_max, steps):
    """Sampling grid shared by every series: ``steps`` points, both ends included."""
    if steps < 1:
        raise ValidationError(f"steps must be >= 1, got {steps}")
    if not t_max > 0:
        raise ValidationError(f"t_max must be positive, got {t_max}")
    return np.linspace(0.0, float(t_max), int(steps))
