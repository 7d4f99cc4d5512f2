"""The g = m = 1 theory: Hecke's theta, Gamma_0(N) and the multiplier of theta."""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from .config import config
from .errors import DomainError, InputFormatError, InvalidElementError, TermBudgetExceeded
from .linalg import principal_half_power
from .theta import MIN_TOLERANCE, ThetaValue

logger = logging.getLogger(__name__)

HECKE_LEVEL = 4


@dataclass(frozen=True)
class Gamma0Element:
    """An integer matrix [[a, b], [c, d]] with ad - bc = 1."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def create(cls, a: int, b: int, c: int, d: int, level: int = 1) -> 'Gamma0Element':
        """Validate and build an element of Gamma_0(level).

        Raises:
            InvalidElementError: if ad - bc != 1 or level does not divide c
        """
        a, b, c, d = (int(v) for v in (a, b, c, d))
        if a * d - b * c != 1:
            raise InvalidElementError(f"ad - bc = {a * d - b * c}, expected 1")
        element = cls(a, b, c, d)
        if not element.is_in_gamma0(level):
            raise InvalidElementError(f"c = {c} is not divisible by the level {level}")
        return element

    def is_in_gamma0(self, level: int) -> bool:
        if level < 1:
            raise DomainError("level must be a positive integer")
        return self.a * self.d - self.b * self.c == 1 and self.c % level == 0

    def negate(self) -> 'Gamma0Element':
        """-gamma, which acts on the upper half plane exactly as gamma does."""
        return Gamma0Element(-self.a, -self.b, -self.c, -self.d)

    def act(self, tau: complex) -> complex:
        """(a tau + b) / (c tau + d)."""
        return (self.a * tau + self.b) / (self.c * tau + self.d)

    def to_dict(self) -> Dict[str, Any]:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}

    @classmethod
    def from_dict(cls, data: Any, level: int = 1) -> 'Gamma0Element':
        if not isinstance(data, dict):
            raise InputFormatError("expected {\"a\": .., \"b\": .., \"c\": .., \"d\": ..}", "gamma")
        values = []
        for key in ("a", "b", "c", "d"):
            v = data.get(key)
            if isinstance(v, bool) or not isinstance(v, int):
                raise InputFormatError(f"expected an integer, got {v!r}", key)
            values.append(v)
        return cls.create(*values, level=level)


def _hecke_tail(y: float, n: int) -> float:
    """Bound on 2 sum_{r > n} e^{-2 pi y r^2}."""
    q = math.exp(-2 * math.pi * y)
    return 2 * q ** ((n + 1) ** 2) / (1 - q ** (2 * n + 3))


def hecke_theta_value(tau: complex, tol: Optional[float] = None,
                      term_budget: Optional[int] = None) -> ThetaValue:
    """theta(tau) = sum_r e^{2 pi i r^2 tau} with its truncation bound.

    Args:
        tau: Point of the upper half plane
        tol: Bound on the omitted terms (config.tol if None)
        term_budget: Largest admissible number of terms (config.term_budget if None)

    Raises:
        DomainError: if Im tau <= 0 or tol <= 0
        TermBudgetExceeded: if Im tau is so small that the sum needs too many terms
    """
    if tol is None:
        tol = config.tol
    if term_budget is None:
        term_budget = config.term_budget
    tau = complex(tau)
    if not tau.imag > 0:
        raise DomainError(f"Im tau must be positive, got {tau.imag:.3g}")
    if not tol > 0:
        raise DomainError("tolerance must be positive")
    tol = max(tol, MIN_TOLERANCE)

    y = tau.imag
    n = max(0, int(math.ceil(math.sqrt(math.log(max(2 / tol, 1.0)) / (2 * math.pi * y)))) - 1)
    if 2 * n + 1 > term_budget:
        raise TermBudgetExceeded(2 * n + 1, term_budget, n)
    while _hecke_tail(y, n) >= tol:
        n += 1

    # shells r^2 = k^2 in increasing order, the pair +-r counted together
    terms = [1 + 0j] + [2 * cmath.exp(2j * math.pi * r * r * tau) for r in range(1, n + 1)]
    value = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
    return ThetaValue(value, _hecke_tail(y, n), 2 * n + 1)


def hecke_theta(tau: complex, tol: Optional[float] = None) -> complex:
    """theta(tau) = sum_r e^{2 pi i r^2 tau}, truncated with tail below tol."""
    return hecke_theta_value(tau, tol).value


def epsilon_d(d: int) -> complex:
    """1 if d = 1 mod 4, i if d = 3 mod 4.

    Raises:
        DomainError: if d is even
    """
    if d % 2 == 0:
        raise DomainError(f"epsilon_d needs odd d, got {d}")
    return 1 + 0j if d % 4 == 1 else 1j


# (2/n) for n mod 8
_KRONECKER_TWO = (0, 1, 0, -1, 0, -1, 0, 1)


def kronecker_symbol(a: int, b: int) -> int:
    """The Kronecker symbol (a/b).

    Binary reduction with quadratic reciprocity; agrees with the Jacobi
    symbol for odd positive b and with the Legendre symbol for odd prime b.
    """
    a, b = int(a), int(b)
    if b == 0:
        return 1 if abs(a) == 1 else 0
    if a % 2 == 0 and b % 2 == 0:
        return 0

    v = 0
    while b % 2 == 0:
        v += 1
        b //= 2
    k = _KRONECKER_TWO[a & 7] if v % 2 else 1
    if b < 0:
        b = -b
        if a < 0:
            k = -k

    while True:
        if a == 0:
            return k if b == 1 else 0
        v = 0
        while a % 2 == 0:
            v += 1
            a //= 2
        if v % 2:
            k *= _KRONECKER_TWO[b & 7]
        if a & b & 2:
            k = -k
        r = abs(a)
        a = b % r
        b = r


def hecke_sides(gamma: Gamma0Element, tau: complex,
                tol: Optional[float] = None) -> Tuple[complex, complex]:
    """Both sides of theta(gamma tau) = eps_d^-1 (c/d) (c tau + d)^(1/2) theta(tau).

    gamma is replaced by -gamma when d < 0.

    Returns:
        (lhs, rhs)

    Raises:
        InvalidElementError: if gamma is not in Gamma_0(4)
        DomainError: if Im tau <= 0
    """
    if tol is None:
        tol = config.tol
    if not gamma.is_in_gamma0(HECKE_LEVEL):
        raise InvalidElementError(f"{gamma} is not in Gamma_0({HECKE_LEVEL})")
    if gamma.d < 0:
        gamma = gamma.negate()
    tau = complex(tau)
    if not tau.imag > 0:
        raise DomainError(f"Im tau must be positive, got {tau.imag:.3g}")

    prefactor = (kronecker_symbol(gamma.c, gamma.d) / epsilon_d(gamma.d)
                 * principal_half_power(gamma.c * tau + gamma.d, 1))
    lhs = hecke_theta(gamma.act(tau), tol / 10)
    rhs = prefactor * hecke_theta(tau, tol / (10 * max(1.0, abs(prefactor))))
    return lhs, rhs


def verify_hecke(gamma: Gamma0Element, tau: complex, tol: Optional[float] = None) -> bool:
    """Whether both sides of Hecke's transformation formula agree within tol."""
    if tol is None:
        tol = config.tol
    lhs, rhs = hecke_sides(gamma, tau, tol)
    defect = abs(lhs - rhs)
    logger.debug("hecke %s at %s: defect %.3g", gamma, tau, defect)
    return defect < tol


def enumerate_gamma0(level: int, bound: int, positive_d: bool = True) -> List[Gamma0Element]:
    """All elements of Gamma_0(level) with entries bounded by bound in absolute value.

    Args:
        level: N
        bound: Largest admissible |a|, |b|, |c|, |d|
        positive_d: Keep only elements with d > 0

    Returns:
        Elements ordered by (c, d, a)
    """
    if level < 1 or bound < 1:
        raise DomainError("level and bound must be positive")
    elements = []
    for c in range(-bound, bound + 1):
        if c % level:
            continue
        for d in range(-bound, bound + 1):
            if d == 0 or (positive_d and d < 0) or math.gcd(c, d) != 1:
                continue
            for a in range(-bound, bound + 1):
                if c == 0:
                    if a * d != 1:
                        continue
                    elements.extend(Gamma0Element(a, b, c, d) for b in range(-bound, bound + 1))
                    continue
                if (a * d - 1) % c:
                    continue
                b = (a * d - 1) // c
                if abs(b) <= bound:
                    elements.append(Gamma0Element(a, b, c, d))
    return elements
