"""Argument reduction of (Omega, Z) by theta-group moves before summation."""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .config import config
from .generators import GLetter, SigmaLetter, SLetter, TLetter, make_generator
from .groups import JacobiGroupElement, _frozen, act, jacobi_inverse
from .linalg import det_over_i_half_power, inverse, min_eigenvalue_sym
from .point import SiegelJacobiPoint

logger = logging.getLogger(__name__)

TRANSLATE = "translate"
UNIMODULAR = "unimodular"
SHIFT = "shift"
INVERT = "invert"

IMPROVEMENT = 1e-9
LLL_DELTA = 0.75
LLL_MAX_ITERATIONS = 1000


@dataclass(frozen=True)
class ReductionStep:
    """One move. Theta(after) = factor * Theta(before).

    Attributes:
        kind: translate, unimodular, shift or invert
        element: The theta-group element that was applied
        factor: Automorphy factor picked up by the move
    """

    kind: str
    element: JacobiGroupElement
    factor: complex

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "element": self.element.to_dict(),
                "factor": [self.factor.real, self.factor.imag]}


@dataclass(frozen=True)
class ReductionTrace:
    """Result of reduce_point.

    Theta(reduced_point) = multiplier * Theta(original_point).

    Attributes:
        original_point: Input point
        reduced_point: Point after the recorded steps
        multiplier: Product of the step factors
        det_factor: Product of the det(Omega/i)^(m/2) parts of inversion steps
        steps: Moves in the order they were applied
        converged: False if the step cap stopped the loop
    """

    original_point: SiegelJacobiPoint
    reduced_point: SiegelJacobiPoint
    multiplier: complex
    det_factor: complex
    steps: Tuple[ReductionStep, ...]
    converged: bool

    def replay(self) -> SiegelJacobiPoint:
        """Undo the steps on reduced_point; recovers original_point."""
        point = self.reduced_point
        for step in reversed(self.steps):
            point = act(jacobi_inverse(step.element), point)
        return point

    def to_dict(self) -> Dict[str, Any]:
        return {
            "original_point": self.original_point.to_dict(),
            "reduced_point": self.reduced_point.to_dict(),
            "multiplier": [self.multiplier.real, self.multiplier.imag],
            "det_factor": [self.det_factor.real, self.det_factor.imag],
            "steps": [step.to_dict() for step in self.steps],
            "converged": self.converged,
        }


def round_half_toward_zero(x: np.ndarray) -> np.ndarray:
    """Nearest integer, ties resolved toward zero."""
    x = np.asarray(x, dtype=float)
    return (np.sign(x) * np.ceil(np.abs(x) - 0.5)).astype(np.int64)


def lll_gram(Y: np.ndarray, delta: float = LLL_DELTA) -> np.ndarray:
    """LLL reduction of the lattice with Gram matrix Y.

    Returns:
        Unimodular alpha such that t(alpha) Y alpha is LLL-reduced
    """
    n = Y.shape[0]
    alpha = np.eye(n, dtype=np.int64)

    def gso(a: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        c = np.linalg.cholesky(a.T @ Y @ a)
        d = np.diag(c)
        return c / d, d * d

    k = 1
    for _ in range(LLL_MAX_ITERATIONS):
        if k >= n:
            break
        mu, b = gso(alpha)
        for j in reversed(range(k)):
            q = int(round(mu[k, j]))
            if q:
                alpha[:, k] -= q * alpha[:, j]
                mu, b = gso(alpha)
        if b[k] >= (delta - mu[k, k - 1] ** 2) * b[k - 1]:
            k += 1
        else:
            alpha[:, [k - 1, k]] = alpha[:, [k, k - 1]]
            k = max(k - 1, 1)
    return alpha


def _unimodular_move(p: SiegelJacobiPoint) -> Optional[ReductionStep]:
    if p.g < 2:
        return None
    alpha = lll_gram(p.y)
    if np.array_equal(alpha, np.eye(p.g, dtype=np.int64)):
        return None
    if min_eigenvalue_sym(alpha.T @ p.y @ alpha) <= p.min_eigenvalue() * (1 + IMPROVEMENT):
        return None
    return ReductionStep(UNIMODULAR, make_generator(GLetter(_frozen(alpha)), p.g, p.m), 1 + 0j)


def _translate_move(p: SiegelJacobiPoint) -> Optional[ReductionStep]:
    x = p.omega.real
    b = round_half_toward_zero(x)
    np.fill_diagonal(b, 2 * round_half_toward_zero(np.diag(x) / 2))
    b = np.triu(b) + np.triu(b, 1).T
    if not b.any():
        return None
    return ReductionStep(TRANSLATE, make_generator(TLetter(_frozen(-b)), p.g, p.m), 1 + 0j)


def _shift_move(p: SiegelJacobiPoint) -> Optional[ReductionStep]:
    # Z = a Omega + b with real a, b; move both into [-1/2, 1/2]
    omega, z = p.omega, p.z
    a = p.v @ np.linalg.inv(p.y)
    lam = -round_half_toward_zero(a)
    b = (z + lam @ omega).real - (a + lam) @ omega.real
    mu = -round_half_toward_zero(b)
    if not (lam.any() or mu.any()):
        return None
    exponent = np.trace(lam @ omega @ lam.T + 2 * lam @ z.T)
    factor = cmath.exp(-1j * math.pi * complex(exponent))
    letter = SLetter(_frozen(lam), _frozen(mu), _frozen(-mu @ lam.T))
    return ReductionStep(SHIFT, make_generator(letter, p.g, p.m), factor)


def _invert_move(p: SiegelJacobiPoint, threshold: float) -> Optional[Tuple[ReductionStep, complex]]:
    lam = p.min_eigenvalue()
    if lam > threshold:
        return None
    omega_inv = inverse(p.omega)
    if min_eigenvalue_sym((-omega_inv).imag) <= lam * (1 + IMPROVEMENT):
        return None
    det_part = det_over_i_half_power(p.omega, p.m)
    exponent = np.trace(p.z @ omega_inv @ p.z.T)
    factor = cmath.exp(1j * math.pi * complex(exponent)) * det_part
    return ReductionStep(INVERT, make_generator(SigmaLetter(), p.g, p.m), factor), det_part


def reduce_point(p: SiegelJacobiPoint, max_steps: Optional[int] = None,
                 threshold: Optional[float] = None) -> ReductionTrace:
    """Move p towards a point where the lattice sum converges fast.

    Moves are tried in the order unimodular (g >= 2), translate, shift,
    invert; the first that applies is taken and the search restarts. An
    inversion is only taken when it strictly raises the smallest eigenvalue
    of Im Omega. If the step cap is hit, the trace ends at the point with the
    largest smallest eigenvalue seen so far and is flagged unconverged.

    Args:
        p: Point to reduce
        max_steps: Step cap (config.max_reduction_steps if None)
        threshold: Inversion trigger on min eig Im Omega (config.inversion_threshold if None)
    """
    if max_steps is None:
        max_steps = config.max_reduction_steps
    if threshold is None:
        threshold = config.inversion_threshold

    current = p
    multiplier = 1 + 0j
    det_factor = 1 + 0j
    steps: List[ReductionStep] = []
    best = (p.min_eigenvalue(), 0, multiplier, det_factor, current)
    converged = False

    while True:
        step = _unimodular_move(current) or _translate_move(current) or _shift_move(current)
        det_part = 1 + 0j
        if step is None:
            inverted = _invert_move(current, threshold)
            if inverted is None:
                converged = True
                break
            step, det_part = inverted
        if len(steps) >= max_steps:
            break
        current = act(step.element, current)
        multiplier *= step.factor
        det_factor *= det_part
        steps.append(step)
        lam = current.min_eigenvalue()
        if lam >= best[0]:
            best = (lam, len(steps), multiplier, det_factor, current)

    if not converged:
        _, n_steps, multiplier, det_factor, current = best
        steps = steps[:n_steps]
        logger.warning("reduction stopped after %d steps without converging", max_steps)

    logger.debug("reduced in %d steps, multiplier %s", len(steps), multiplier)
    return ReductionTrace(p, current, multiplier, det_factor, tuple(steps), converged)
