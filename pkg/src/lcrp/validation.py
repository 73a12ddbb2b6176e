"""Input validation helpers shared by the estimator layer and the CLI."""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, RangeError
from .lct import Matrix2, make_matrix

__all__ = ["check_pow2_field", "check_image_stack", "as_matrix"]


def _is_pow2(n: int) -> bool:
    return n >= 8 and (n & (n - 1)) == 0


def check_pow2_field(x, name: str = "X") -> np.ndarray:
    """Coerce to a complex 2D array with power-of-two dims (>= 8)."""
    arr = np.asarray(x)
    if arr.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2D, got shape {arr.shape}")
    if not (_is_pow2(arr.shape[0]) and _is_pow2(arr.shape[1])):
        raise DimensionMismatch(
            f"{name} dims must be powers of two >= 8, got {arr.shape}"
        )
    if not np.all(np.isfinite(arr.view(np.float64) if arr.dtype == complex else arr)):
        raise RangeError(f"{name} contains non-finite values")
    return arr.astype(np.complex128)


def check_image_stack(x, name: str = "X") -> np.ndarray:
    """Coerce to an (m, rows, cols) float stack with values in [0, 1]."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 2:
        arr = arr[None]
    if arr.ndim != 3:
        raise DimensionMismatch(f"{name} must be (m, rows, cols), got shape {arr.shape}")
    if not (_is_pow2(arr.shape[1]) and _is_pow2(arr.shape[2])):
        raise DimensionMismatch(
            f"{name} image dims must be powers of two >= 8, got {arr.shape[1:]}"
        )
    if np.any(arr < 0.0) or np.any(arr > 1.0) or not np.all(np.isfinite(arr)):
        raise RangeError(f"{name} values must lie in [0, 1]")
    return arr


def as_matrix(spec) -> Matrix2:
    """Accept a Matrix2 or an (a, b, c, d) tuple; validates either way."""
    if isinstance(spec, Matrix2):
        return make_matrix(spec.a, spec.b, spec.c, spec.d)
    a, b, c, d = (float(v) for v in spec)
    return make_matrix(a, b, c, d)
