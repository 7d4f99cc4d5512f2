"""Points (Omega, Z) of the Siegel-Jacobi space."""

from dataclasses import dataclass
from typing import Any, Dict

import numpy as np

from .errors import InputFormatError, InvalidPointError
from .linalg import matrix_from_json, matrix_to_json, min_eigenvalue_sym

SYMMETRY_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class SiegelJacobiPoint:
    """A pair (Omega, Z) with Omega in H_g and Z a complex m x g matrix.

    Construct through ``SiegelJacobiPoint.create`` to get validation; the
    raw constructor is used internally on values already known to be valid.
    """

    omega: np.ndarray
    z: np.ndarray

    @property
    def g(self) -> int:
        return int(self.omega.shape[0])

    @property
    def m(self) -> int:
        return int(self.z.shape[0])

    @property
    def y(self) -> np.ndarray:
        """Im Omega, symmetrised."""
        y = self.omega.imag
        return (y + y.T) / 2

    @property
    def v(self) -> np.ndarray:
        """Im Z."""
        return self.z.imag

    @classmethod
    def create(cls, omega: Any, z: Any) -> 'SiegelJacobiPoint':
        """Validate and build a point.

        Args:
            omega: g x g complex symmetric matrix (or scalar for g = 1)
            z: m x g complex matrix (or scalar for g = m = 1)

        Returns:
            The validated point

        Raises:
            InvalidPointError: on shape, symmetry or positivity violations
        """
        om = np.array(omega, dtype=complex)
        zz = np.array(z, dtype=complex)
        if om.ndim == 0:
            om = om.reshape(1, 1)
        if zz.ndim == 0:
            zz = zz.reshape(1, 1)
        if om.ndim != 2 or om.shape[0] != om.shape[1] or om.shape[0] == 0:
            raise InvalidPointError(f"Omega must be square, got shape {om.shape}")
        if zz.ndim != 2 or zz.shape[1] != om.shape[0] or zz.shape[0] == 0:
            raise InvalidPointError(
                f"Z must be m x {om.shape[0]}, got shape {zz.shape}")
        if not (np.all(np.isfinite(om)) and np.all(np.isfinite(zz))):
            raise InvalidPointError("entries must be finite")
        if float(np.max(np.abs(om - om.T))) > SYMMETRY_TOLERANCE * max(1.0, float(np.max(np.abs(om)))):
            raise InvalidPointError("Omega is not symmetric")
        om = (om + om.T) / 2
        lam = min_eigenvalue_sym(om.imag)
        if not lam > 0:
            raise InvalidPointError(
                f"Im Omega is not positive definite (min eigenvalue {lam:.3g})")
        om.setflags(write=False)
        zz.setflags(write=False)
        return cls(om, zz)

    def min_eigenvalue(self) -> float:
        """Smallest eigenvalue of Im Omega."""
        return min_eigenvalue_sym(self.y)

    def distance(self, other: 'SiegelJacobiPoint') -> float:
        """Largest entrywise difference between two points of equal shape."""
        return max(float(np.max(np.abs(self.omega - other.omega))),
                   float(np.max(np.abs(self.z - other.z))))

    def to_dict(self) -> Dict[str, Any]:
        return {"omega": matrix_to_json(self.omega), "z": matrix_to_json(self.z)}

    @classmethod
    def from_dict(cls, data: Any) -> 'SiegelJacobiPoint':
        if not isinstance(data, dict):
            raise InputFormatError("a point must be a JSON object")
        for key in ("omega", "z"):
            if key not in data:
                raise InputFormatError("missing field", key)
        return cls.create(matrix_from_json(data["omega"], "omega"),
                          matrix_from_json(data["z"], "z"))

    def __repr__(self) -> str:
        return f"SiegelJacobiPoint(omega={self.omega.tolist()}, z={self.z.tolist()})"
