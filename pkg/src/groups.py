"""Exact integer arithmetic for the Jacobi modular group and its action."""

from dataclasses import dataclass
from typing import Any, Dict

import numpy as np

from .errors import DimensionError, InputFormatError, InvalidElementError
from .linalg import int_matrix_from_json, int_matrix_to_json, inverse
from .point import SiegelJacobiPoint


def _frozen(a: Any) -> np.ndarray:
    out = np.array(a, dtype=np.int64)
    out.setflags(write=False)
    return out


def symplectic_form(g: int) -> np.ndarray:
    """J_g = [[0, I], [-I, 0]]."""
    J = np.zeros((2 * g, 2 * g), dtype=np.int64)
    J[:g, g:] = np.eye(g, dtype=np.int64)
    J[g:, :g] = -np.eye(g, dtype=np.int64)
    return J


def is_symplectic(M: Any) -> bool:
    """Exact check of tM J_g M = J_g."""
    a = np.asarray(M)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] % 2:
        return False
    if not np.issubdtype(a.dtype, np.integer):
        if not np.all(a == np.round(a)):
            return False
        a = a.astype(np.int64)
    J = symplectic_form(a.shape[0] // 2)
    return bool(np.array_equal(a.T @ J @ a, J))


@dataclass(frozen=True, eq=False)
class SymplecticElement:
    """An element of Sp(2g, Z) stored as its 2g x 2g matrix."""

    matrix: np.ndarray

    @classmethod
    def create(cls, matrix: Any) -> 'SymplecticElement':
        a = _frozen(matrix)
        if not is_symplectic(a):
            raise InvalidElementError("matrix is not symplectic")
        return cls(a)

    @classmethod
    def identity(cls, g: int) -> 'SymplecticElement':
        return cls(_frozen(np.eye(2 * g, dtype=np.int64)))

    @classmethod
    def from_blocks(cls, A: Any, B: Any, C: Any, D: Any) -> 'SymplecticElement':
        return cls.create(np.block([[np.asarray(A), np.asarray(B)],
                                    [np.asarray(C), np.asarray(D)]]))

    @property
    def g(self) -> int:
        return self.matrix.shape[0] // 2

    @property
    def a(self) -> np.ndarray:
        return self.matrix[:self.g, :self.g]

    @property
    def b(self) -> np.ndarray:
        return self.matrix[:self.g, self.g:]

    @property
    def c(self) -> np.ndarray:
        return self.matrix[self.g:, :self.g]

    @property
    def d(self) -> np.ndarray:
        return self.matrix[self.g:, self.g:]

    def __matmul__(self, other: 'SymplecticElement') -> 'SymplecticElement':
        if self.g != other.g:
            raise DimensionError(f"degree mismatch: {self.g} vs {other.g}")
        return SymplecticElement(_frozen(self.matrix @ other.matrix))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SymplecticElement) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash(self.matrix.tobytes())

    def to_dict(self) -> Dict[str, Any]:
        return {"g": self.g, "matrix": int_matrix_to_json(self.matrix)}

    @classmethod
    def from_dict(cls, data: Any) -> 'SymplecticElement':
        if not isinstance(data, dict) or "matrix" not in data:
            raise InputFormatError("expected {\"g\": n, \"matrix\": [[...]]}", "gamma")
        element = cls.create(int_matrix_from_json(data["matrix"], "gamma.matrix"))
        if "g" in data and data["g"] != element.g:
            raise InputFormatError(f"g = {data['g']} does not match the matrix", "gamma.g")
        return element


def symplectic_inverse(gamma: SymplecticElement) -> SymplecticElement:
    """gamma^-1 = J_g^-1 tgamma J_g, i.e. [[tD, -tB], [-tC, tA]]."""
    return SymplecticElement(_frozen(np.block([[gamma.d.T, -gamma.b.T],
                                               [-gamma.c.T, gamma.a.T]])))


def is_theta_element(gamma: SymplecticElement) -> bool:
    """Whether the diagonals of tAC and tBD are even."""
    ac = np.diag(gamma.a.T @ gamma.c)
    bd = np.diag(gamma.b.T @ gamma.d)
    return bool(np.all(ac % 2 == 0) and np.all(bd % 2 == 0))


@dataclass(frozen=True, eq=False)
class HeisenbergElement:
    """A triple (lambda, mu; kappa) with kappa + mu t(lambda) symmetric."""

    lam: np.ndarray
    mu: np.ndarray
    kappa: np.ndarray

    @classmethod
    def create(cls, lam: Any, mu: Any, kappa: Any) -> 'HeisenbergElement':
        l, u, k = _frozen(lam), _frozen(mu), _frozen(kappa)
        if l.ndim != 2 or l.shape != u.shape:
            raise InvalidElementError("lambda and mu must be m x g matrices of equal shape")
        m = l.shape[0]
        if k.shape != (m, m):
            raise InvalidElementError(f"kappa must be {m} x {m}")
        s = k + u @ l.T
        if not np.array_equal(s, s.T):
            raise InvalidElementError("kappa + mu t(lambda) is not symmetric")
        return cls(l, u, k)

    @classmethod
    def zero(cls, g: int, m: int) -> 'HeisenbergElement':
        return cls(_frozen(np.zeros((m, g))), _frozen(np.zeros((m, g))),
                   _frozen(np.zeros((m, m))))

    @property
    def g(self) -> int:
        return int(self.lam.shape[1])

    @property
    def m(self) -> int:
        return int(self.lam.shape[0])

    def is_zero(self) -> bool:
        return not (self.lam.any() or self.mu.any() or self.kappa.any())

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, HeisenbergElement)
                and np.array_equal(self.lam, other.lam)
                and np.array_equal(self.mu, other.mu)
                and np.array_equal(self.kappa, other.kappa))

    def __hash__(self) -> int:
        return hash((self.lam.tobytes(), self.mu.tobytes(), self.kappa.tobytes()))

    def to_dict(self) -> Dict[str, Any]:
        return {"lambda": int_matrix_to_json(self.lam),
                "mu": int_matrix_to_json(self.mu),
                "kappa": int_matrix_to_json(self.kappa)}

    @classmethod
    def from_dict(cls, data: Any) -> 'HeisenbergElement':
        if not isinstance(data, dict):
            raise InputFormatError("expected a JSON object", "heisenberg")
        for key in ("lambda", "mu", "kappa"):
            if key not in data:
                raise InputFormatError("missing field", key)
        return cls.create(int_matrix_from_json(data["lambda"], "lambda"),
                          int_matrix_from_json(data["mu"], "mu"),
                          int_matrix_from_json(data["kappa"], "kappa"))


def _check_heisenberg(x: HeisenbergElement, y: HeisenbergElement) -> None:
    if x.lam.shape != y.lam.shape:
        raise DimensionError(
            f"Heisenberg shape mismatch: {x.lam.shape} vs {y.lam.shape}")


def heisenberg_mul(x: HeisenbergElement, y: HeisenbergElement) -> HeisenbergElement:
    """(l,u;k) o (l',u';k') = (l+l', u+u'; k+k'+l t(u') - u t(l'))."""
    _check_heisenberg(x, y)
    return HeisenbergElement(
        _frozen(x.lam + y.lam),
        _frozen(x.mu + y.mu),
        _frozen(x.kappa + y.kappa + x.lam @ y.mu.T - x.mu @ y.lam.T),
    )


def heisenberg_inverse(x: HeisenbergElement) -> HeisenbergElement:
    """(l,u;k)^-1 = (-l, -u; -k + l tu - u tl); the correction vanishes for m = 1."""
    kappa = -x.kappa + x.lam @ x.mu.T - x.mu @ x.lam.T
    return HeisenbergElement(_frozen(-x.lam), _frozen(-x.mu), _frozen(kappa))


def heisenberg_sign(x: HeisenbergElement) -> int:
    """e^{-pi i sigma(kappa + mu t(lambda))}, exactly +1 or -1."""
    s = int(np.trace(x.kappa + x.mu @ x.lam.T))
    return -1 if s % 2 else 1


@dataclass(frozen=True, eq=False)
class JacobiGroupElement:
    """A pair (gamma, (lambda, mu; kappa)) of the semidirect product."""

    gamma: SymplecticElement
    h: HeisenbergElement

    def __post_init__(self):
        if self.gamma.g != self.h.g:
            raise DimensionError(
                f"symplectic degree {self.gamma.g} does not match Heisenberg g = {self.h.g}")

    @classmethod
    def identity(cls, g: int, m: int) -> 'JacobiGroupElement':
        return cls(SymplecticElement.identity(g), HeisenbergElement.zero(g, m))

    @property
    def g(self) -> int:
        return self.gamma.g

    @property
    def m(self) -> int:
        return self.h.m

    def __mul__(self, other: 'JacobiGroupElement') -> 'JacobiGroupElement':
        return jacobi_mul(self, other)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, JacobiGroupElement)
                and self.gamma == other.gamma and self.h == other.h)

    def __hash__(self) -> int:
        return hash((self.gamma, self.h))

    def to_dict(self) -> Dict[str, Any]:
        return {"gamma": self.gamma.to_dict(), "heisenberg": self.h.to_dict()}

    @classmethod
    def from_dict(cls, data: Any) -> 'JacobiGroupElement':
        if not isinstance(data, dict) or "gamma" not in data or "heisenberg" not in data:
            raise InputFormatError("expected {\"gamma\": ..., \"heisenberg\": ...}", "element")
        try:
            return cls(SymplecticElement.from_dict(data["gamma"]),
                       HeisenbergElement.from_dict(data["heisenberg"]))
        except DimensionError as e:
            raise InputFormatError(str(e), "element") from e


def jacobi_mul(x: JacobiGroupElement, y: JacobiGroupElement) -> JacobiGroupElement:
    """Semidirect product with (l~, u~) = (l, u) gamma'."""
    if x.g != y.g or x.m != y.m:
        raise DimensionError(f"(g, m) mismatch: ({x.g}, {x.m}) vs ({y.g}, {y.m})")
    g = x.g
    row = np.hstack([x.h.lam, x.h.mu]) @ y.gamma.matrix
    lam_t, mu_t = row[:, :g], row[:, g:]
    h = HeisenbergElement(
        _frozen(lam_t + y.h.lam),
        _frozen(mu_t + y.h.mu),
        _frozen(x.h.kappa + y.h.kappa + lam_t @ y.h.mu.T - mu_t @ y.h.lam.T),
    )
    return JacobiGroupElement(x.gamma @ y.gamma, h)


def jacobi_inverse(x: JacobiGroupElement) -> JacobiGroupElement:
    """Two-sided inverse in the Jacobi modular group."""
    g = x.g
    gamma_inv = symplectic_inverse(x.gamma)
    row = -(np.hstack([x.h.lam, x.h.mu]) @ gamma_inv.matrix)
    lam, mu = row[:, :g], row[:, g:]
    kappa = -x.h.kappa + lam @ mu.T - mu @ lam.T
    return JacobiGroupElement(gamma_inv, HeisenbergElement(_frozen(lam), _frozen(mu), _frozen(kappa)))


def act(x: JacobiGroupElement, p: SiegelJacobiPoint) -> SiegelJacobiPoint:
    """((A Om + B)(C Om + D)^-1, (Z + l Om + u)(C Om + D)^-1).

    Raises:
        SingularMatrixError: if C Om + D is numerically singular
    """
    if x.g != p.g or x.m != p.m:
        raise DimensionError(f"element ({x.g}, {x.m}) cannot act on a point ({p.g}, {p.m})")
    gm = x.gamma
    om = p.omega
    denom_inv = inverse(gm.c @ om + gm.d)
    omega = (gm.a @ om + gm.b) @ denom_inv
    omega = (omega + omega.T) / 2
    z = (p.z + x.h.lam @ om + x.h.mu) @ denom_inv
    omega.setflags(write=False)
    z.setflags(write=False)
    return SiegelJacobiPoint(omega, z)
