"""Generators s, t, g, sigma of the theta subgroup and words in them."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Union

import numpy as np

from .errors import DimensionError, DomainError, InputFormatError, InvalidElementError
from .groups import (
    HeisenbergElement,
    JacobiGroupElement,
    SymplecticElement,
    jacobi_mul,
    _frozen,
)
from .linalg import int_matrix_from_json, int_matrix_to_json
from .point import SiegelJacobiPoint

MAX_WORD_LENGTH = 64
PARAMETER_BOUND = 2


@dataclass(frozen=True, eq=False)
class SLetter:
    """s(lambda, mu; kappa) = (I_2g, (lambda, mu; kappa))."""

    lam: np.ndarray
    mu: np.ndarray
    kappa: np.ndarray
    kind: str = field(default="s", init=False)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "s", "lambda": int_matrix_to_json(self.lam),
                "mu": int_matrix_to_json(self.mu), "kappa": int_matrix_to_json(self.kappa)}


@dataclass(frozen=True, eq=False)
class TLetter:
    """t(B) with B symmetric and even on the diagonal."""

    b: np.ndarray
    kind: str = field(default="t", init=False)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "t", "b": int_matrix_to_json(self.b)}


@dataclass(frozen=True, eq=False)
class GLetter:
    """g(alpha) = (diag(t(alpha), alpha^-1), 0) with alpha in GL(g, Z)."""

    alpha: np.ndarray
    kind: str = field(default="g", init=False)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "g", "alpha": int_matrix_to_json(self.alpha)}


@dataclass(frozen=True)
class SigmaLetter:
    """sigma_g = ([[0, -I], [I, 0]], 0)."""

    kind: str = field(default="sigma", init=False)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": "sigma"}


Letter = Union[SLetter, TLetter, GLetter, SigmaLetter]
GeneratorWord = List[Letter]


def _letter_eq(x: Letter, y: Letter) -> bool:
    return x.to_dict() == y.to_dict()


def words_equal(u: GeneratorWord, w: GeneratorWord) -> bool:
    return len(u) == len(w) and all(_letter_eq(x, y) for x, y in zip(u, w))


def unimodular_inverse(alpha: np.ndarray) -> np.ndarray:
    """Exact inverse of an integer matrix with det = +-1.

    Raises:
        InvalidElementError: if alpha is not unimodular
    """
    a = np.asarray(alpha, dtype=np.int64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidElementError("alpha must be square")
    if round(abs(np.linalg.det(a))) != 1:
        raise InvalidElementError("alpha is not in GL(g, Z)")
    inv = np.rint(np.linalg.inv(a.astype(float))).astype(np.int64)
    if not np.array_equal(a @ inv, np.eye(a.shape[0], dtype=np.int64)):
        raise InvalidElementError("alpha is not in GL(g, Z)")
    return inv


def make_generator(letter: Letter, g: int, m: int) -> JacobiGroupElement:
    """Realise a letter as an element of the Jacobi theta group.

    Args:
        letter: One of SLetter, TLetter, GLetter, SigmaLetter
        g: Degree of the symplectic part
        m: Size of the Heisenberg part

    Returns:
        The generator as a JacobiGroupElement

    Raises:
        InvalidElementError: on odd-diagonal B, non-unimodular alpha or
            an invalid Heisenberg triple
        DimensionError: if the letter's parameters do not fit (g, m)
    """
    eye = np.eye(g, dtype=np.int64)
    zero = np.zeros((g, g), dtype=np.int64)

    if isinstance(letter, SLetter):
        if letter.lam.shape != (m, g):
            raise DimensionError(f"s-letter lambda must be {m} x {g}")
        h = HeisenbergElement.create(letter.lam, letter.mu, letter.kappa)
        return JacobiGroupElement(SymplecticElement.identity(g), h)

    if isinstance(letter, TLetter):
        b = np.asarray(letter.b, dtype=np.int64)
        if b.shape != (g, g):
            raise DimensionError(f"t-letter B must be {g} x {g}")
        if not np.array_equal(b, b.T) or np.any(np.diag(b) % 2):
            raise InvalidElementError("B must be symmetric with even diagonal")
        gamma = SymplecticElement(_frozen(np.block([[eye, b], [zero, eye]])))
        return JacobiGroupElement(gamma, HeisenbergElement.zero(g, m))

    if isinstance(letter, GLetter):
        alpha = np.asarray(letter.alpha, dtype=np.int64)
        if alpha.shape != (g, g):
            raise DimensionError(f"g-letter alpha must be {g} x {g}")
        gamma = SymplecticElement(_frozen(np.block([[alpha.T, zero],
                                                    [zero, unimodular_inverse(alpha)]])))
        return JacobiGroupElement(gamma, HeisenbergElement.zero(g, m))

    if isinstance(letter, SigmaLetter):
        gamma = SymplecticElement(_frozen(np.block([[zero, -eye], [eye, zero]])))
        return JacobiGroupElement(gamma, HeisenbergElement.zero(g, m))

    raise InvalidElementError(f"unknown letter {letter!r}")


def compose_word(word: GeneratorWord, g: int, m: int) -> JacobiGroupElement:
    """Left-to-right product of the letters of a word."""
    result = JacobiGroupElement.identity(g, m)
    for letter in word:
        result = jacobi_mul(result, make_generator(letter, g, m))
    return result


def _elementary_alpha(rng: np.random.Generator, g: int) -> np.ndarray:
    alpha = np.eye(g, dtype=np.int64)
    moves = ["sign"] if g == 1 else ["sign", "swap", "shear"]
    move = moves[int(rng.integers(len(moves)))]
    if move == "sign":
        i = int(rng.integers(g))
        alpha[i, i] = -1
    else:
        i, j = (int(k) for k in rng.choice(g, size=2, replace=False))
        if move == "swap":
            alpha[[i, j]] = alpha[[j, i]]
        else:
            alpha[i, j] = 1 if rng.integers(2) else -1
    return alpha


def random_letter(rng: np.random.Generator, g: int, m: int) -> Letter:
    """Draw one letter with parameters bounded by PARAMETER_BOUND."""
    k = PARAMETER_BOUND
    kind = ("s", "t", "g", "sigma")[int(rng.integers(4))]
    if kind == "s":
        lam = rng.integers(-k, k + 1, size=(m, g))
        mu = rng.integers(-k, k + 1, size=(m, g))
        s = np.triu(rng.integers(-k, k + 1, size=(m, m)))
        s = s + np.triu(s, 1).T
        return SLetter(_frozen(lam), _frozen(mu), _frozen(s - mu @ lam.T))
    if kind == "t":
        b = np.triu(rng.integers(-k, k + 1, size=(g, g)), 1)
        b = b + b.T + np.diag(2 * rng.integers(-1, 2, size=g))
        return TLetter(_frozen(b))
    if kind == "g":
        return GLetter(_frozen(_elementary_alpha(rng, g)))
    return SigmaLetter()


def random_theta_word(g: int, m: int, length: int, seed: int) -> GeneratorWord:
    """Deterministic random word of the given length.

    Raises:
        DomainError: if length is negative or above MAX_WORD_LENGTH
    """
    if length < 0 or length > MAX_WORD_LENGTH:
        raise DomainError(f"word length must lie in [0, {MAX_WORD_LENGTH}]")
    rng = np.random.default_rng(seed)
    return [random_letter(rng, g, m) for _ in range(length)]


def random_point(rng: np.random.Generator, g: int, m: int,
                 min_eig: float = 0.3, max_eig: float = 2.0,
                 real_scale: float = 0.5, z_scale: float = 0.5) -> SiegelJacobiPoint:
    """Random point with the eigenvalues of Im Omega in [min_eig, max_eig].

    Args:
        rng: Seeded numpy generator
        g: Degree
        m: Number of rows of Z
        min_eig: Lower bound for the spectrum of Im Omega
        max_eig: Upper bound for the spectrum of Im Omega
        real_scale: Entries of Re Omega drawn from [-real_scale, real_scale]
        z_scale: Real and imaginary parts of Z drawn from [-z_scale, z_scale]
    """
    q, _ = np.linalg.qr(rng.normal(size=(g, g)))
    y = q @ np.diag(rng.uniform(min_eig, max_eig, size=g)) @ q.T
    x = rng.uniform(-real_scale, real_scale, size=(g, g))
    omega = (x + x.T) / 2 + 1j * (y + y.T) / 2
    z = rng.uniform(-z_scale, z_scale, size=(m, g)) + 1j * rng.uniform(-z_scale, z_scale, size=(m, g))
    return SiegelJacobiPoint.create(omega, z)


def letter_from_dict(data: Any) -> Letter:
    if not isinstance(data, dict) or "kind" not in data:
        raise InputFormatError("a letter needs a \"kind\" tag", "word")
    kind = data["kind"]
    if kind == "s":
        return SLetter(_frozen(int_matrix_from_json(data.get("lambda"), "lambda")),
                       _frozen(int_matrix_from_json(data.get("mu"), "mu")),
                       _frozen(int_matrix_from_json(data.get("kappa"), "kappa")))
    if kind == "t":
        return TLetter(_frozen(int_matrix_from_json(data.get("b"), "b")))
    if kind == "g":
        return GLetter(_frozen(int_matrix_from_json(data.get("alpha"), "alpha")))
    if kind == "sigma":
        return SigmaLetter()
    raise InputFormatError(f"unknown letter kind {kind!r}", "word")


def word_to_json(word: GeneratorWord) -> List[Dict[str, Any]]:
    return [letter.to_dict() for letter in word]


def word_from_json(data: Any) -> GeneratorWord:
    if not isinstance(data, list):
        raise InputFormatError("a word must be a JSON array", "word")
    return [letter_from_dict(item) for item in data]
