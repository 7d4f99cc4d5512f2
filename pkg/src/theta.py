"""Lattice-sum evaluation of the theta series with a certified tail bound."""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Iterator, Optional, Tuple

import numpy as np

from .config import config
from .errors import DomainError, TermBudgetExceeded
from .linalg import min_eigenvalue_sym
from .point import SiegelJacobiPoint
from .reduction import reduce_point

logger = logging.getLogger(__name__)

MIN_TOLERANCE = 1e-300
EPS = float(np.finfo(float).eps)
# rows per block of lattice points; bounds the memory of one vectorised pass
CHUNK_POINTS = 1 << 17
# largest |A|^2 cutoff for which points are counted exactly
EXACT_COUNT_LIMIT = 1 << 16


@dataclass(frozen=True)
class ThetaValue:
    """A theta value with its truncation certificate.

    Attributes:
        value: The truncated lattice sum
        tail_bound: Upper bound on the omitted terms
        terms_used: Number of lattice points summed
        reduction_steps: Moves applied before summation (0 for direct sums)
        rounding_bound: Estimate of the floating-point error of the summed terms
    """

    value: complex
    tail_bound: float
    terms_used: int
    reduction_steps: int = 0
    rounding_bound: float = 0.0

    @property
    def error_bound(self) -> float:
        """Truncation plus rounding: the bound on |value - Theta|."""
        return self.tail_bound + self.rounding_bound

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": [self.value.real, self.value.imag],
            "tail_bound": self.tail_bound,
            "terms": self.terms_used,
            "reduction_steps": self.reduction_steps,
            "rounding_bound": self.rounding_bound,
        }


def _sphere_area(n: int) -> float:
    return 2 * math.pi ** (n / 2) / math.gamma(n / 2)


def tail_bound(radius: float, lam: float, v: float, n: int) -> float:
    """Bound on the sum of e^{-pi lam |A|^2 + 2 pi v |A|} over |A| > radius.

    Each lattice point is charged to its unit cube, the cubes are covered by
    the shell |x| > radius - sqrt(n)/2, and the radial integrand is bounded
    by its tangent line in log scale. Returns inf where that argument does
    not apply (radius too close to the peak of the envelope).

    Args:
        radius: Truncation radius in Frobenius norm
        lam: Smallest eigenvalue of Im Omega
        v: Frobenius norm of the linear term's imaginary part
        n: Lattice dimension m * g
    """
    r0 = v / lam
    s0 = radius - math.sqrt(n) - r0
    if s0 <= 0:
        return math.inf
    a = r0 + math.sqrt(n) / 2
    beta = 2 * math.pi * lam * s0 - (n - 1) / (s0 + a)
    if beta <= 0:
        return math.inf
    log_bound = (math.log(_sphere_area(n)) + math.pi * v * v / lam
                 + (n - 1) * math.log(s0 + a) - math.pi * lam * s0 * s0 - math.log(beta))
    if log_bound > 700:
        return math.inf
    return math.exp(log_bound)


def _radius(lam: float, v: float, n: int, tol: float) -> float:
    lo = math.sqrt(n) + v / lam
    step = 1.0
    hi = lo + step
    while tail_bound(hi, lam, v, n) >= tol:
        step *= 2
        hi = lo + step
    for _ in range(200):
        if hi - lo <= 1e-12 * hi:
            break
        mid = (lo + hi) / 2
        if tail_bound(mid, lam, v, n) < tol:
            hi = mid
        else:
            lo = mid
    return hi


def truncation_radius(Y: Any, V: Any, tol: float) -> float:
    """Smallest radius whose certified tail bound is below tol.

    Args:
        Y: Im Omega, positive definite g x g
        V: Real m x g matrix (imaginary part of the linear term)
        tol: Target bound on the omitted terms

    Raises:
        DomainError: if tol <= 0 or Y is not positive definite
    """
    if not tol > 0:
        raise DomainError("tolerance must be positive")
    lam = min_eigenvalue_sym(Y)
    if not lam > 0:
        raise DomainError(f"Y is not positive definite (min eigenvalue {lam:.3g})")
    V = np.atleast_2d(np.asarray(V, dtype=float))
    return _radius(lam, float(np.linalg.norm(V)), V.size, tol)


def estimated_terms(radius: float, n: int) -> float:
    """Upper bound on the number of lattice points with |A| <= radius (volume of the enlarged ball)."""
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1) * (radius + math.sqrt(n) / 2) ** n


def lattice_point_count(n: int, radius: float) -> float:
    """Exact number of points of Z^n with |A| <= radius, counted shell by shell."""
    max_norm2 = int(math.floor(radius * radius))
    squares = np.arange(math.isqrt(max_norm2) + 1) ** 2
    counts = np.zeros(max_norm2 + 1)
    counts[squares] = 2.0
    counts[0] = 1.0
    one_axis = counts.copy()
    for _ in range(n - 1):
        nxt = np.zeros_like(counts)
        for s in squares:
            nxt[s:] += one_axis[s] * counts[:max_norm2 + 1 - s]
        counts = nxt
    return float(counts.sum())


def check_term_budget(radius: float, n: int, term_budget: int) -> None:
    """Raise TermBudgetExceeded if the ball of the given radius holds too many points.

    The volume bound decides when it is conclusive; otherwise the points are
    counted exactly as long as the squared radius is small enough to tabulate.
    """
    estimate = estimated_terms(radius, n)
    if estimate > term_budget and radius * radius <= EXACT_COUNT_LIMIT:
        estimate = lattice_point_count(n, radius)
    if estimate > term_budget:
        raise TermBudgetExceeded(estimate, term_budget, radius)


def _coordinate_limits(room: np.ndarray) -> np.ndarray:
    """Largest k >= 0 with k^2 <= room, elementwise and exact."""
    limit = np.floor(np.sqrt(room)).astype(np.int64)
    limit -= (limit * limit > room).astype(np.int64)
    limit += ((limit + 1) * (limit + 1) <= room).astype(np.int64)
    return limit


def _ball_chunks(n: int, max_norm2: int, chunk: int = CHUNK_POINTS) -> Iterator[np.ndarray]:
    """Points of Z^n with |A|^2 <= max_norm2 in lexicographic order.

    Coordinates are added one at a time, each bounded by the radius left over
    from the prefix, and prefixes are split so that no block grows past
    chunk rows (a single prefix expands to at most 2 sqrt(max_norm2) + 1).
    """
    def extend(prefix: np.ndarray, norm2: np.ndarray) -> Iterator[np.ndarray]:
        if prefix.shape[1] == n:
            yield prefix
            return
        limit = _coordinate_limits(max_norm2 - norm2)
        sizes = 2 * limit + 1
        ends = np.cumsum(sizes)
        if ends[-1] > chunk and len(prefix) > 1:
            start = 0
            while start < len(prefix):
                base = int(ends[start - 1]) if start else 0
                stop = max(start + 1, int(np.searchsorted(ends, base + chunk, side='right')))
                yield from extend(prefix[start:stop], norm2[start:stop])
                start = stop
            return
        owner = np.repeat(np.arange(len(prefix)), sizes)
        coord = np.arange(int(ends[-1]), dtype=np.int64) - (ends - sizes)[owner] - limit[owner]
        yield from extend(np.column_stack([prefix[owner], coord]), norm2[owner] + coord * coord)

    yield from extend(np.zeros((1, 0), dtype=np.int64), np.zeros(1, dtype=np.int64))


def lattice_sum(quad: np.ndarray, lin: np.ndarray, radius: float) -> Tuple[complex, int, float]:
    """Sum e^{pi i sigma(A Q tA + 2 A tL)} over integer m x g matrices A with |A| <= radius.

    Terms are grouped into shells of equal |A|^2 (lexicographic inside a
    shell) and the shells are added in increasing order, so the result is
    reproducible bit for bit.

    The rounding estimate charges every term eps |term| (pi (n + 2) |exponent
    bound| + 4) for evaluating its exponent and exponential, and every shell
    eps |shell| (terms in shell + blocks) for the running sums. Cancellation
    between large terms shows up here and not in the tail bound.

    Args:
        quad: Q, complex symmetric g x g
        lin: L, complex m x g
        radius: Frobenius-norm cutoff

    Returns:
        (sum, number of terms, rounding estimate)
    """
    m, g = lin.shape
    n = m * g
    max_norm2 = int(math.floor(radius * radius))
    shell_re = np.zeros(max_norm2 + 1)
    shell_im = np.zeros(max_norm2 + 1)
    shell_abs = np.zeros(max_norm2 + 1)
    shell_count = np.zeros(max_norm2 + 1)
    qnorm = float(np.linalg.norm(quad))
    lnorm = float(np.linalg.norm(lin))
    weighted = 0.0
    count = 0
    blocks = 0

    for pts in _ball_chunks(n, max_norm2):
        norm2 = np.einsum('ij,ij->i', pts, pts)
        A = pts.reshape(-1, m, g).astype(float)
        exponent = (np.einsum('nij,nij->n', A @ quad, A)
                    + 2 * np.einsum('nij,ij->n', A, lin))
        terms = np.exp(1j * math.pi * exponent)
        size = np.abs(terms)
        shell_re += np.bincount(norm2, weights=terms.real, minlength=max_norm2 + 1)
        shell_im += np.bincount(norm2, weights=terms.imag, minlength=max_norm2 + 1)
        shell_abs += np.bincount(norm2, weights=size, minlength=max_norm2 + 1)
        shell_count += np.bincount(norm2, minlength=max_norm2 + 1)
        scale = math.pi * (n + 2) * (norm2 * qnorm + 2 * np.sqrt(norm2) * lnorm) + 4
        weighted += float(np.dot(size, scale))
        count += len(pts)
        blocks += 1

    value = complex(math.fsum(shell_re), math.fsum(shell_im))
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise DomainError("lattice sum overflows double precision; reduce the point first")
    rounding = EPS * (weighted + float(np.dot(shell_count + blocks, shell_abs)))
    return value, count, rounding


def theta_direct(p: SiegelJacobiPoint, tol: Optional[float] = None,
                 term_budget: Optional[int] = None) -> ThetaValue:
    """Theta(Omega, Z) by truncated summation over Z^(m, g).

    Args:
        p: Point of the Siegel-Jacobi space
        tol: Bound on the truncation error (config.tol if None)
        term_budget: Largest admissible term count (config.term_budget if None)

    Raises:
        TermBudgetExceeded: if the radius needs more terms than the budget
    """
    if tol is None:
        tol = config.tol
    if term_budget is None:
        term_budget = config.term_budget
    if not tol > 0:
        raise DomainError("tolerance must be positive")
    tol = max(tol, MIN_TOLERANCE)

    n = p.m * p.g
    lam = p.min_eigenvalue()
    v = float(np.linalg.norm(p.v))
    radius = _radius(lam, v, n, tol)
    check_term_budget(radius, n, term_budget)

    value, count, rounding = lattice_sum(p.omega, p.z, radius)
    bound = tail_bound(radius, lam, v, n)
    logger.debug("direct sum: radius %.3f, %d terms, tail %.3g, rounding %.3g",
                 radius, count, bound, rounding)
    return ThetaValue(value, bound, count, rounding_bound=rounding)


def theta(p: SiegelJacobiPoint, tol: Optional[float] = None,
          max_steps: Optional[int] = None,
          term_budget: Optional[int] = None) -> ThetaValue:
    """Theta(Omega, Z) evaluated at a reduced point and transported back.

    Args:
        p: Point of the Siegel-Jacobi space
        tol: Bound on the absolute error of the returned value
        max_steps: Cap on reduction moves (config.max_reduction_steps if None)
        term_budget: Largest admissible term count for the final sum
    """
    if tol is None:
        tol = config.tol
    if not tol > 0:
        raise DomainError("tolerance must be positive")

    trace = reduce_point(p, max_steps)
    scale = abs(trace.multiplier)
    reduced = theta_direct(trace.reduced_point, max(tol * scale, MIN_TOLERANCE), term_budget)
    return ThetaValue(
        reduced.value / trace.multiplier,
        reduced.tail_bound / scale,
        reduced.terms_used,
        len(trace.steps),
        reduced.rounding_bound / scale,
    )
