"""Independent checks of the Gaussian integral and of Poisson summation."""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.polynomial.legendre import leggauss

from .config import config
from .errors import DimensionError, DomainError
from .linalg import det_over_i_half_power, inverse
from .point import SiegelJacobiPoint
from .theta import check_term_budget, lattice_sum, theta_direct, truncation_radius

logger = logging.getLogger(__name__)

MIN_POINTS_PER_AXIS = 8
MAX_TOTAL_POINTS = 10_000_000
MAX_QUADRATURE_DIM = 2
# half-width of the box in standard deviations of |integrand|
ENVELOPE_SIGMAS = 7.0


@dataclass(frozen=True)
class QuadratureSpec:
    """Tensor-product Gauss-Legendre rule on a box around the Gaussian peak.

    Attributes:
        box_half_width: Half side of the box; None picks ENVELOPE_SIGMAS
            standard deviations of the integrand's envelope
        points_per_axis: Nodes per coordinate
    """

    box_half_width: Optional[float] = None
    points_per_axis: int = 256

    def __post_init__(self):
        if self.points_per_axis < MIN_POINTS_PER_AXIS:
            raise DomainError(f"points_per_axis must be at least {MIN_POINTS_PER_AXIS}")
        if self.box_half_width is not None and not self.box_half_width > 0:
            raise DomainError("box_half_width must be positive")


def gaussian_integral_closed(p: SiegelJacobiPoint) -> complex:
    """det(Omega/i)^(-m/2) e^{-pi i sigma(Z Omega^-1 tZ)}."""
    exponent = complex(np.trace(p.z @ inverse(p.omega) @ p.z.T))
    return det_over_i_half_power(p.omega, -p.m) * cmath.exp(-1j * math.pi * exponent)


def gaussian_integral_quadrature(p: SiegelJacobiPoint,
                                 spec: Optional[QuadratureSpec] = None) -> complex:
    """Integral of e^{pi i sigma(x Omega tx + 2 x tZ)} over real m x g matrices x.

    Args:
        p: Point (Omega, Z) with m * g <= 2
        spec: Quadrature rule (config.quadrature_points nodes per axis if None)

    Raises:
        DimensionError: if m * g > 2
        DomainError: if the grid would exceed MAX_TOTAL_POINTS
    """
    if spec is None:
        spec = QuadratureSpec(points_per_axis=config.quadrature_points)
    m, g = p.m, p.g
    n = m * g
    if n > MAX_QUADRATURE_DIM:
        raise DimensionError(f"quadrature needs m * g <= {MAX_QUADRATURE_DIM}, got {n}")
    if spec.points_per_axis ** n > MAX_TOTAL_POINTS:
        raise DomainError(f"{spec.points_per_axis}^{n} nodes exceed {MAX_TOTAL_POINTS}")

    # |integrand| = e^{-pi sigma(x Y tx + 2 x tV)}, peaked at x = -V Y^-1
    center = -p.v @ np.linalg.inv(p.y)
    half = spec.box_half_width
    if half is None:
        half = ENVELOPE_SIGMAS / math.sqrt(2 * math.pi * p.min_eigenvalue())

    nodes, weights = leggauss(spec.points_per_axis)
    axes = [c + half * nodes for c in center.ravel()]
    grids = np.meshgrid(*axes, indexing='ij')
    x = np.stack([grid.ravel() for grid in grids], axis=-1).reshape(-1, m, g)
    w = half ** n * np.prod(np.stack(np.meshgrid(*([weights] * n), indexing='ij'), axis=-1)
                            .reshape(-1, n), axis=1)

    exponent = (np.einsum('nij,jk,nik->n', x, p.omega, x)
                + 2 * np.einsum('nij,ij->n', x, p.z))
    value = complex(np.sum(w * np.exp(1j * math.pi * exponent)))
    logger.debug("quadrature: %d nodes, half-width %.3f, value %s", len(w), half, value)
    return value


def poisson_check(p: SiegelJacobiPoint, tol: Optional[float] = None,
                  term_budget: Optional[int] = None) -> float:
    """|sum_A f(A) - sum_A f^(A)| for f(x) = e^{pi i sigma(x Omega tx + 2 x tZ)}.

    The left sum is Theta(Omega, Z). The right sum uses the closed-form
    transform f^(A) = det(Omega/i)^(-m/2) e^{-pi i sigma((Z+A) Omega^-1 t(Z+A))},
    which is a lattice sum at (-Omega^-1, -Z Omega^-1) times the closed
    Gaussian integral.

    Raises:
        TermBudgetExceeded: if either lattice sum needs too many terms
    """
    if tol is None:
        tol = config.tol
    if term_budget is None:
        term_budget = config.term_budget
    if not tol > 0:
        raise DomainError("tolerance must be positive")

    lhs = theta_direct(p, tol / 10, term_budget).value

    const = gaussian_integral_closed(p)
    om_inv = inverse(p.omega)
    quad = -(om_inv + om_inv.T) / 2
    lin = -p.z @ om_inv
    radius = truncation_radius(quad.imag, lin.imag, tol / (10 * max(1.0, abs(const))))
    check_term_budget(radius, p.m * p.g, term_budget)
    dual, _, _ = lattice_sum(quad, lin, radius)
    return abs(lhs - const * dual)
