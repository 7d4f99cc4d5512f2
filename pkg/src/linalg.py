"""Small dense matrix helpers and the half-integer power branch."""

import cmath
import math
from typing import Any, List, Optional, Tuple

import numpy as np

from .errors import DimensionError, DomainError, InputFormatError, SingularMatrixError

SINGULARITY_THRESHOLD = 1e-12
SYMMETRY_TOLERANCE = 1e-10
MAX_DIM = 8


def principal_half_power(z: complex, kappa: int) -> complex:
    """Return z^(kappa/2) on the branch -pi/2 < arg(z^(1/2)) <= pi/2.

    Args:
        z: Complex base
        kappa: Integer exponent numerator

    Returns:
        (z^(1/2))^kappa
    """
    z = complex(z)
    if z == 0:
        if kappa < 0:
            raise DomainError("0 raised to a negative half power")
        return 0j if kappa > 0 else 1 + 0j

    # -0.0 in the imaginary part would flip cmath's branch on the negative axis
    if z.imag == 0:
        z = complex(z.real, 0.0)
    return cmath.sqrt(z) ** int(kappa)


def _square(M: Any, name: str = "matrix") -> np.ndarray:
    a = np.asarray(M)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {a.shape}")
    if a.shape[0] > MAX_DIM:
        raise DimensionError(f"{name} has dimension {a.shape[0]} > {MAX_DIM}")
    return a


def _lu(M: np.ndarray) -> Tuple[np.ndarray, np.ndarray, int]:
    """LU factorisation with partial pivoting, packed L\\U form."""
    a = np.array(M, dtype=complex)
    n = a.shape[0]
    perm = np.arange(n)
    sign = 1
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        if p != k:
            a[[k, p]] = a[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            sign = -sign
        pivot = a[k, k]
        if pivot == 0:
            continue
        a[k + 1:, k] /= pivot
        a[k + 1:, k + 1:] -= np.outer(a[k + 1:, k], a[k, k + 1:])
    return a, perm, sign


def det(M: Any) -> complex:
    """Determinant via LU with partial pivoting."""
    a = _square(M)
    if a.shape[0] == 0:
        return 1 + 0j
    lu, _, sign = _lu(a)
    return complex(sign * np.prod(np.diag(lu)))


def inverse(M: Any) -> np.ndarray:
    """Inverse via LU with partial pivoting.

    Raises:
        SingularMatrixError: if a pivot falls below the relative threshold
    """
    a = _square(M)
    n = a.shape[0]
    lu, perm, _ = _lu(a)

    scale = float(np.max(np.sum(np.abs(a), axis=1))) if n else 1.0
    pivots = np.abs(np.diag(lu))
    smallest = float(pivots.min()) if n else 1.0
    if smallest <= SINGULARITY_THRESHOLD * max(scale, 1e-300):
        raise SingularMatrixError(
            f"matrix is numerically singular (smallest pivot {smallest:.3g})",
            pivot=smallest,
        )

    x = np.eye(n, dtype=complex)[perm]
    for i in range(n):
        x[i] -= lu[i, :i] @ x[:i]
    for i in reversed(range(n)):
        x[i] = (x[i] - lu[i, i + 1:] @ x[i + 1:]) / lu[i, i]
    return x


def as_real_symmetric(Y: Any, name: str = "Y") -> np.ndarray:
    """Validate a real symmetric matrix and return an exactly symmetric copy."""
    a = np.asarray(_square(Y, name), dtype=float)
    if not np.all(np.isfinite(a)):
        raise DomainError(f"{name} has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    if a.size and float(np.max(np.abs(a - a.T))) > SYMMETRY_TOLERANCE * scale:
        raise DomainError(f"{name} is not symmetric")
    return (a + a.T) / 2


def min_eigenvalue_sym(Y: Any) -> float:
    """Smallest eigenvalue of a real symmetric matrix."""
    a = as_real_symmetric(Y)
    return float(np.linalg.eigvalsh(a)[0])


def det_over_i_half_power(Omega: np.ndarray, kappa: int) -> complex:
    """det(Omega/i)^(kappa/2) on the branch that is positive on i*Y.

    The eigenvalues of Omega/i = Y - iX all have positive real part, so the
    product of their principal square roots is holomorphic on H_g. For
    g <= 2 it coincides with principal_half_power(det(Omega/i), kappa).
    """
    eigenvalues = np.linalg.eigvals(np.asarray(Omega, dtype=complex) / 1j)
    root = complex(np.prod(np.sqrt(eigenvalues.astype(complex))))
    return root ** int(kappa)


def sigma(T: np.ndarray) -> complex:
    """Trace of a square matrix."""
    return complex(np.trace(T))


def _entry(value: Any, field: str) -> complex:
    if isinstance(value, bool):
        raise InputFormatError("booleans are not numbers", field)
    if isinstance(value, (int, float)):
        z = complex(value)
    elif isinstance(value, (list, tuple)) and len(value) == 2 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
    ):
        z = complex(value[0], value[1])
    else:
        raise InputFormatError(f"expected a number or [re, im], got {value!r}", field)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InputFormatError("entries must be finite", field)
    return z


def matrix_from_json(data: Any, field: str = "matrix",
                     shape: Optional[Tuple[int, int]] = None) -> np.ndarray:
    """Decode an array of rows with [re, im] or bare-number entries.

    Args:
        data: Decoded JSON value
        field: Name used in error messages
        shape: Required shape, if any

    Returns:
        complex128 array
    """
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise InputFormatError("expected a non-empty array of rows", field)
    cols = len(data[0])
    if cols == 0 or any(len(r) != cols for r in data):
        raise InputFormatError("rows must be non-empty and of equal length", field)
    out = np.array([[_entry(v, field) for v in row] for row in data], dtype=complex)
    if shape is not None and out.shape != tuple(shape):
        raise InputFormatError(f"expected shape {tuple(shape)}, got {out.shape}", field)
    return out


def matrix_to_json(M: np.ndarray) -> List[List[List[float]]]:
    """Encode a complex matrix as rows of [re, im] pairs."""
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(M, dtype=complex)]


def int_matrix_from_json(data: Any, field: str = "matrix",
                         shape: Optional[Tuple[int, int]] = None) -> np.ndarray:
    """Decode an array of rows of integers into an int64 array."""
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise InputFormatError("expected a non-empty array of rows", field)
    cols = len(data[0])
    if any(len(r) != cols for r in data):
        raise InputFormatError("rows must have equal length", field)
    for row in data:
        for v in row:
            if isinstance(v, bool) or not isinstance(v, int):
                raise InputFormatError(f"expected an integer, got {v!r}", field)
    out = np.array(data, dtype=np.int64).reshape(len(data), cols)
    if shape is not None and out.shape != tuple(shape):
        raise InputFormatError(f"expected shape {tuple(shape)}, got {out.shape}", field)
    return out


def int_matrix_to_json(M: np.ndarray) -> List[List[int]]:
    return [[int(v) for v in row] for row in np.asarray(M)]
