"""Tests for src/classical.py."""

import math

import pytest

from src.classical import (
    HECKE_LEVEL,
    Gamma0Element,
    enumerate_gamma0,
    epsilon_d,
    hecke_sides,
    hecke_theta,
    hecke_theta_value,
    kronecker_symbol,
    verify_hecke,
)
from src.errors import DomainError, InputFormatError, InvalidElementError, TermBudgetExceeded
from src.point import SiegelJacobiPoint
from src.theta import theta_direct

HECKE_AT_I = 1 + 2 * math.exp(-2 * math.pi) + 2 * math.exp(-8 * math.pi)

TAUS = (1j, 0.25 + 1j / 3, -0.2 + 2j)


def small_primes(limit):
    return [p for p in range(3, limit) if all(p % q for q in range(2, int(p ** 0.5) + 1))]


class TestHeckeTheta:
    def test_at_i(self):
        assert abs(hecke_theta(1j, 1e-14) - HECKE_AT_I) < 1e-14
        assert abs(hecke_theta(1j) - 1.0037348854) < 1e-9

    def test_matches_mpmath(self):
        mpmath = pytest.importorskip("mpmath")
        mpmath.mp.dps = 30
        for tau in TAUS:
            expected = complex(mpmath.jtheta(3, 0, mpmath.exp(2j * mpmath.pi * tau)))
            assert abs(hecke_theta(tau, 1e-13) - expected) < 1e-12

    def test_period_one(self):
        for tau in TAUS:
            assert abs(hecke_theta(tau + 1) - hecke_theta(tau)) < 1e-9

    def test_is_theta_at_doubled_argument(self):
        for tau in TAUS:
            p = SiegelJacobiPoint.create(2 * tau, 0)
            assert abs(hecke_theta(tau, 1e-12) - theta_direct(p, 1e-12).value) < 1e-11

    def test_certificate(self):
        value = hecke_theta_value(0.1 + 0.05j, 1e-10)
        assert value.tail_bound < 1e-10
        assert value.terms_used % 2 == 1

    def test_guards(self):
        with pytest.raises(DomainError):
            hecke_theta(1.0)
        with pytest.raises(DomainError):
            hecke_theta(1j, 0.0)
        with pytest.raises(TermBudgetExceeded):
            hecke_theta_value(1e-6j, 1e-9, term_budget=100)


class TestSymbols:
    @pytest.mark.parametrize("d, expected", [(1, 1), (5, 1), (-3, 1), (3, 1j), (7, 1j), (-1, 1j)])
    def test_epsilon(self, d, expected):
        assert epsilon_d(d) == expected

    def test_epsilon_even(self):
        with pytest.raises(DomainError):
            epsilon_d(4)

    @pytest.mark.parametrize("a, b, expected", [
        (2, 3, -1),
        (3, 5, -1),
        (-1, 3, -1),
        (-1, 5, 1),
        (4, 7, 1),
        (0, 1, 1),
        (0, 3, 0),
        (6, 9, 0),
        (2, 7, 1),
        (5, 8, -1),
        (3, 8, -1),
        (1, -1, 1),
        (-1, -1, -1),
        (-4, 5, 1),
        (8, 15, 1),
    ])
    def test_kronecker(self, a, b, expected):
        assert kronecker_symbol(a, b) == expected

    def test_euler_criterion(self):
        for p in small_primes(100):
            for a in range(-2 * p, 2 * p):
                if a % p == 0:
                    expected = 0
                else:
                    expected = 1 if pow(a % p, (p - 1) // 2, p) == 1 else -1
                assert kronecker_symbol(a, p) == expected

    def test_multiplicative(self):
        for a in range(-12, 13):
            for b in range(1, 30, 2):
                for c in range(1, 30, 2):
                    assert kronecker_symbol(a, b * c) == kronecker_symbol(a, b) * kronecker_symbol(a, c)


class TestGamma0:
    def test_create(self):
        gamma = Gamma0Element.create(1, 0, 4, 1, level=4)
        assert gamma.is_in_gamma0(4)
        assert gamma.is_in_gamma0(2)
        assert not gamma.is_in_gamma0(8)

    def test_create_rejects(self):
        with pytest.raises(InvalidElementError):
            Gamma0Element.create(1, 1, 1, 1)
        with pytest.raises(InvalidElementError):
            Gamma0Element.create(1, 0, 2, 1, level=4)
        with pytest.raises(DomainError):
            Gamma0Element(1, 0, 0, 1).is_in_gamma0(0)

    def test_negation_acts_identically(self):
        gamma = Gamma0Element.create(3, 1, 8, 3, level=4)
        tau = 0.1 + 0.7j
        assert abs(gamma.act(tau) - gamma.negate().act(tau)) < 1e-15

    def test_from_dict(self):
        assert Gamma0Element.from_dict({"a": 1, "b": 2, "c": 0, "d": 1}, 4) == Gamma0Element(1, 2, 0, 1)
        with pytest.raises(InputFormatError):
            Gamma0Element.from_dict({"a": 1, "b": 2, "c": 0, "d": 1.0})
        with pytest.raises(InputFormatError):
            Gamma0Element.from_dict([1, 2, 0, 1])

    def test_enumerate(self):
        elements = enumerate_gamma0(4, 6)
        assert elements
        for gamma in elements:
            assert gamma.is_in_gamma0(4)
            assert gamma.d > 0
            assert max(abs(gamma.a), abs(gamma.b), abs(gamma.c), abs(gamma.d)) <= 6
        assert Gamma0Element(1, 0, 4, 1) in elements
        assert Gamma0Element(-1, 0, 4, -1) not in elements
        assert Gamma0Element(-1, 0, 4, -1) in enumerate_gamma0(4, 6, positive_d=False)
        keys = [(e.c, e.d, e.a) for e in elements]
        assert keys == sorted(keys)

    def test_enumerate_guards(self):
        with pytest.raises(DomainError):
            enumerate_gamma0(0, 5)


class TestHeckeFormula:
    @pytest.mark.parametrize("abcd", [(1, 0, 4, 1), (1, 2, 0, 1), (3, 1, 8, 3), (5, -2, 8, -3), (-1, 0, -4, -1)])
    def test_examples(self, abcd):
        gamma = Gamma0Element.create(*abcd, level=HECKE_LEVEL)
        for tau in TAUS:
            assert verify_hecke(gamma, tau, 1e-9)

    def test_simple_case(self):
        lhs, rhs = hecke_sides(Gamma0Element(1, 0, 4, 1), 1j, 1e-12)
        assert abs(rhs - (4j + 1) ** 0.5 * HECKE_AT_I) < 1e-11
        assert abs(lhs - rhs) < 1e-11

    def test_all_small_elements(self):
        for gamma in enumerate_gamma0(HECKE_LEVEL, 12):
            for tau in TAUS:
                lhs, rhs = hecke_sides(gamma, tau, 1e-9)
                assert abs(lhs - rhs) < 1e-9, (gamma, tau)

    def test_wrong_level(self):
        with pytest.raises(InvalidElementError):
            hecke_sides(Gamma0Element(1, 0, 2, 1), 1j)

    def test_lower_half_plane(self):
        with pytest.raises(DomainError):
            hecke_sides(Gamma0Element(1, 0, 4, 1), -1j)
