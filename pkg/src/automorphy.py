"""Automorphic factors J, J_* and the multiplier of the theta transformation law."""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

from .config import config
from .errors import DimensionError, InvalidElementError, ThetaTooSmallError
from .generators import GLetter, Letter, SigmaLetter, SLetter, TLetter, unimodular_inverse
from .groups import (
    HeisenbergElement,
    JacobiGroupElement,
    SymplecticElement,
    act,
    is_theta_element,
    jacobi_mul,
)
from .linalg import det, det_over_i_half_power, inverse, principal_half_power
from .point import SiegelJacobiPoint
from .theta import theta, theta_direct

logger = logging.getLogger(__name__)


def _core_exponent(x: JacobiGroupElement, p: SiegelJacobiPoint) -> complex:
    """sigma{W (C Om + D)^-1 C tW - l Om tl - 2 l tZ} with W = Z + l Om + u."""
    gm, h = x.gamma, x.h
    om, z = p.omega, p.z
    w = z + h.lam @ om + h.mu
    t = w @ inverse(gm.c @ om + gm.d) @ gm.c @ w.T - h.lam @ om @ h.lam.T - 2 * h.lam @ z.T
    return complex(np.trace(t))


def _heisenberg_trace(h: HeisenbergElement) -> int:
    return int(np.trace(h.kappa + h.mu @ h.lam.T))


def _log_det_power(x: JacobiGroupElement, p: SiegelJacobiPoint) -> complex:
    """log of det(C Om + D)^(m/2) on the principal branch, as m log det^(1/2)."""
    gm = x.gamma
    return p.m * cmath.log(principal_half_power(det(gm.c @ p.omega + gm.d), 1))


def _exp(w: complex) -> complex:
    """e^w with Im w reduced mod 2 pi; cmath raises OverflowError past double range."""
    return cmath.exp(complex(w.real, math.remainder(w.imag, 2 * math.pi)))


def _unit_defect(w: complex) -> float:
    """|e^w - 1| with Im w reduced mod 2 pi; inf when Re w is beyond double range."""
    if w.real > 700:
        return math.inf
    return abs(_exp(w) - 1)


def log_factor_J(x: JacobiGroupElement, p: SiegelJacobiPoint) -> complex:
    """log J(x, (Om, Z)) = pi i (core exponent - kappa - mu t(lambda)).

    |J| can leave double range for long words while its log stays moderate.

    Raises:
        SingularMatrixError: if C Om + D is singular (invalid point)
    """
    return 1j * math.pi * (_core_exponent(x, p) - _heisenberg_trace(x.h))


def factor_J(x: JacobiGroupElement, p: SiegelJacobiPoint) -> complex:
    """J(x, (Om, Z)), the exponential automorphic factor including -kappa - mu t(lambda).

    Raises:
        SingularMatrixError: if C Om + D is singular (invalid point)
        OverflowError: if |J| is beyond double range
    """
    return _exp(log_factor_J(x, p))


def factor_Jstar(x: JacobiGroupElement, p: SiegelJacobiPoint) -> complex:
    """J_*(x, p) = J(x, p) det(C Om + D)^(m/2), principal branch."""
    return _exp(log_factor_J(x, p) + _log_det_power(x, p))


def rhs_core_factor(x: JacobiGroupElement, p: SiegelJacobiPoint) -> complex:
    """The prefactor of Theta(Om, Z) on the right of the transformation law, zeta omitted."""
    return _exp(1j * math.pi * _core_exponent(x, p) + _log_det_power(x, p))


@dataclass(frozen=True)
class TransformationReport:
    """Both sides of the transformation law at one (element, point) pair.

    Attributes:
        element: The theta-group element
        point: The point (Omega, Z)
        lhs: Theta at the transformed point
        rhs_core: Prefactor times Theta at the point, without zeta
        zeta: lhs / rhs_core
        zeta_eighth_defect: |zeta^8 - 1|
    """

    element: JacobiGroupElement
    point: SiegelJacobiPoint
    lhs: complex
    rhs_core: complex
    zeta: complex
    zeta_eighth_defect: float

    @property
    def modulus_defect(self) -> float:
        return abs(abs(self.zeta) - 1)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "element": self.element.to_dict(),
            "point": self.point.to_dict(),
            "lhs": [self.lhs.real, self.lhs.imag],
            "rhs_core": [self.rhs_core.real, self.rhs_core.imag],
            "zeta": [self.zeta.real, self.zeta.imag],
            "zeta_eighth_defect": self.zeta_eighth_defect,
            "modulus_defect": self.modulus_defect,
        }


def extract_zeta(x: JacobiGroupElement, p: SiegelJacobiPoint,
                 tol: Optional[float] = None) -> TransformationReport:
    """Compute zeta = Theta(x.p) / (prefactor * Theta(p)).

    Theta(p) is evaluated at tol/10; Theta(x.p) at tol/10 scaled by the
    prefactor when that is below one, so the quotient keeps its relative
    accuracy.

    Raises:
        InvalidElementError: if x is not in the theta group
        ThetaTooSmallError: if |Theta(p)| < 10 tol
    """
    if tol is None:
        tol = config.tol
    if not is_theta_element(x.gamma):
        raise InvalidElementError("element is not in the theta group")

    base = theta(p, tol / 10)
    if abs(base.value) < 10 * tol:
        raise ThetaTooSmallError(abs(base.value), 10 * tol)

    rhs_core = rhs_core_factor(x, p) * base.value
    lhs_tol = tol / 10 * min(1.0, abs(rhs_core))
    lhs = theta(act(x, p), lhs_tol).value
    zeta = lhs / rhs_core
    return TransformationReport(x, p, lhs, rhs_core, zeta, abs(zeta ** 8 - 1))


def verify_functional_equation(x: JacobiGroupElement, p: SiegelJacobiPoint,
                               tol: Optional[float] = None) -> Tuple[bool, TransformationReport]:
    """Check that zeta is an eighth root of unity.

    Returns:
        (passed, report) with passed iff ||zeta| - 1| < tol and |zeta^8 - 1| < tol
    """
    if tol is None:
        tol = config.tol
    report = extract_zeta(x, p, tol)
    return report.modulus_defect < tol and report.zeta_eighth_defect < tol, report


def verify_mumford(gamma: SymplecticElement, p: SiegelJacobiPoint,
                   tol: Optional[float] = None) -> Tuple[bool, TransformationReport]:
    """The m = 1, lambda = mu = 0 case of the transformation law."""
    if p.m != 1:
        raise DimensionError("the classical formula needs m = 1")
    x = JacobiGroupElement(gamma, HeisenbergElement.zero(gamma.g, 1))
    return verify_functional_equation(x, p, tol)


def generator_zeta(letter: Letter, g: int, m: int) -> Tuple[complex, bool]:
    """The multiplier named for each generator kind.

    Returns:
        (value, exact). exact is False where the principal-branch quotient
        can differ from the named value by a sign: g(alpha) with det alpha = -1
        and m odd, and sigma_g with g >= 2 and m odd.
    """
    if isinstance(letter, (SLetter, TLetter)):
        return 1 + 0j, True
    if isinstance(letter, GLetter):
        d = int(round(np.linalg.det(np.asarray(letter.alpha, dtype=float))))
        unimodular_inverse(letter.alpha)
        return principal_half_power(d, m), d == 1 or m % 2 == 0
    if isinstance(letter, SigmaLetter):
        return principal_half_power((-1j) ** g, m), g == 1 or m % 2 == 0
    raise InvalidElementError(f"unknown letter {letter!r}")


def inversion_defect(p: SiegelJacobiPoint, tol: Optional[float] = None) -> float:
    """|Theta(-Om^-1, Z Om^-1) - e^{pi i sigma(Z Om^-1 tZ)} det(Om/i)^(m/2) Theta(Om, Z)|.

    Both sides are summed directly so the check does not lean on the
    reduction, which itself uses this identity.
    """
    if tol is None:
        tol = config.tol
    om_inv = inverse(p.omega)
    prefactor = (cmath.exp(1j * math.pi * complex(np.trace(p.z @ om_inv @ p.z.T)))
                 * det_over_i_half_power(p.omega, p.m))
    inverted = SiegelJacobiPoint(-om_inv, p.z @ om_inv)
    lhs = theta_direct(inverted, tol / 10).value
    rhs = prefactor * theta_direct(p, tol / (10 * max(1.0, abs(prefactor)))).value
    return abs(lhs - rhs)


def cocycle_defects(x1: JacobiGroupElement, x2: JacobiGroupElement,
                    p: SiegelJacobiPoint) -> Tuple[float, float]:
    """Defects of the J cocycle (relative) and of the squared J_* cocycle ratio.

    Both are formed from logs, so factors far outside double range still
    compare.

    Returns:
        (|J(x1, x2.p) J(x2, p) / J(x1 x2, p) - 1|,
         |(J_*(x1 x2, p) / (J_*(x1, x2.p) J_*(x2, p)))^2 - 1|)
    """
    product = jacobi_mul(x1, x2)
    moved = act(x2, p)
    j_log = log_factor_J(x1, moved) + log_factor_J(x2, p) - log_factor_J(product, p)
    det_log = _log_det_power(product, p) - _log_det_power(x1, moved) - _log_det_power(x2, p)
    return _unit_defect(j_log), _unit_defect(2 * (det_log - j_log))
