"""Numeric foundations shared by every module.

Matrix data is carried by dense complex numpy arrays throughout the
package.  Floating-point comparisons never use exact equality; they go
through an explicit (relative, absolute) tolerance pair that callers can
override.  Linear solves and explicit inverses are guarded by a
reciprocal-condition estimate so that a near-singular system surfaces as
a typed error instead of a silently garbage result.
"""
from __future__ import annotations

import numpy as np

# Default tolerance pair for complex matrix/scalar comparisons.
DEFAULT_RTOL = 1e-10
DEFAULT_ATOL = 1e-12

# Solves and inverses refuse to proceed below this reciprocal condition.
MIN_RCOND = 1e-12

TWO_PI = 2.0 * np.pi


class IllConditionedError(ValueError):
    """A linear system is singular or too close to singular to trust."""


def as_complex_array(values, shape=None, name: str = "array") -> np.ndarray:
    """Return ``values`` as a complex ndarray, optionally checking its shape.

    Args:
        values: array-like input.
        shape: expected shape tuple, or None to accept any shape.
        name: label used in error messages.

    Raises:
        ValueError: on a shape mismatch.
    """
    arr = np.asarray(values, dtype=complex)
    if shape is not None and arr.shape != tuple(shape):
        raise ValueError(f"{name}: expected shape {tuple(shape)}, got {arr.shape}")
    return arr


def readonly(arr: np.ndarray) -> np.ndarray:
    """Copy ``arr`` and lock the copy against writes."""
    out = np.array(arr, copy=True)
    out.setflags(write=False)
    return out


def close(a, b, rtol: float = DEFAULT_RTOL, atol: float = DEFAULT_ATOL) -> bool:
    """Tolerant elementwise comparison; ``b`` is the reference side."""
    return bool(np.allclose(a, b, rtol=rtol, atol=atol))


def relative_difference(a, b) -> float:
    """|a - b| scaled by the larger magnitude; 0 when both vanish."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    scale = max(np.linalg.norm(a.ravel()), np.linalg.norm(b.ravel()))
    if scale == 0.0:
        return 0.0
    return float(np.linalg.norm((a - b).ravel()) / scale)


def reciprocal_condition(a: np.ndarray) -> float:
    """Smallest singular value over the largest; 0.0 for an exactly singular matrix."""
    s = np.linalg.svd(np.asarray(a, dtype=complex), compute_uv=False)
    if s[0] == 0.0:
        return 0.0
    return float(s[-1] / s[0])


def checked_solve(a: np.ndarray, b: np.ndarray, what: str = "linear system") -> np.ndarray:
    """Solve ``a @ x = b`` after verifying ``a`` is safely invertible.

    Raises:
        IllConditionedError: when the reciprocal condition of ``a`` falls
            below ``MIN_RCOND``.
    """
    rc = reciprocal_condition(a)
    if rc < MIN_RCOND:
        raise IllConditionedError(
            f"{what}: reciprocal condition {rc:.3e} is below {MIN_RCOND:.0e}"
        )
    return np.linalg.solve(a, b)


def checked_inv(a: np.ndarray, what: str = "matrix") -> np.ndarray:
    """Explicit inverse with the same conditioning guard as checked_solve."""
    rc = reciprocal_condition(a)
    if rc < MIN_RCOND:
        raise IllConditionedError(
            f"{what}: reciprocal condition {rc:.3e} is below {MIN_RCOND:.0e}"
        )
    return np.linalg.inv(a)


def wrap_phase(theta):
    """Map angles onto [0, 2*pi). Accepts scalars or arrays."""
    wrapped = np.mod(theta, TWO_PI)
    # np.mod of a tiny negative rounds up to exactly 2*pi; keep the
    # interval half open
    return np.where(wrapped < TWO_PI, wrapped, 0.0)[()]
