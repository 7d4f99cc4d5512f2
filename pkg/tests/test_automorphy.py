"""Tests for src/automorphy.py."""

import cmath
import math

import numpy as np
import pytest

from src.automorphy import (
    cocycle_defects,
    extract_zeta,
    factor_J,
    factor_Jstar,
    generator_zeta,
    inversion_defect,
    verify_functional_equation,
    verify_mumford,
)
from src.errors import DimensionError, InvalidElementError, ThetaTooSmallError
from src.generators import (
    GLetter,
    SigmaLetter,
    SLetter,
    TLetter,
    compose_word,
    make_generator,
    random_point,
    random_theta_word,
)
from src.groups import HeisenbergElement, JacobiGroupElement, SymplecticElement
from src.point import SiegelJacobiPoint
from src.theta import theta


def arr(rows):
    return np.array(rows, dtype=np.int64)


def nonvanishing_points(make_point, g, m, count):
    points = []
    while len(points) < count:
        p = make_point(g=g, m=m)
        if abs(theta(p).value) > 1e-2:
            points.append(p)
    return points


AT_I = SiegelJacobiPoint.create(1j, 0)
SIGMA = SigmaLetter()
MINUS_ONE = GLetter(arr([[-1]]))


class TestFactors:
    def test_heisenberg_factor(self):
        x = make_generator(SLetter(arr([[1]]), arr([[0]]), arr([[0]])), 1, 1)
        assert abs(factor_J(x, AT_I) - math.exp(math.pi)) < 1e-9

    def test_heisenberg_sign(self):
        x = make_generator(SLetter(arr([[0]]), arr([[1]]), arr([[0]])), 1, 1)
        p = SiegelJacobiPoint.create(1j, 0.3)
        assert abs(factor_J(x, p) - 1) < 1e-15
        y = JacobiGroupElement(SymplecticElement.identity(1), HeisenbergElement.create([[1]], [[1]], [[0]]))
        assert abs(factor_J(y, AT_I) + math.exp(math.pi)) < 1e-9

    def test_sigma(self):
        x = make_generator(SIGMA, 1, 1)
        assert abs(factor_J(x, AT_I) - 1) < 1e-15
        assert abs(factor_Jstar(x, AT_I) - cmath.exp(1j * math.pi / 4)) < 1e-15

    def test_sign_change(self):
        x = make_generator(MINUS_ONE, 1, 1)
        assert abs(factor_Jstar(x, AT_I) - 1j) < 1e-15

    def test_translation_is_trivial(self, make_point):
        x = make_generator(TLetter(arr([[2, 1], [1, 0]])), 2, 2)
        p = make_point(g=2, m=2)
        assert abs(factor_J(x, p) - 1) < 1e-12
        assert abs(factor_Jstar(x, p) - 1) < 1e-12


class TestCocycle:
    @pytest.mark.parametrize("g, m", [(1, 1), (2, 1), (1, 2), (2, 2)])
    def test_random_words(self, g, m, make_point):
        for seed in range(4):
            x1 = compose_word(random_theta_word(g, m, 4, seed), g, m)
            x2 = compose_word(random_theta_word(g, m, 4, seed + 50), g, m)
            j_defect, jstar_defect = cocycle_defects(x1, x2, make_point(g=g, m=m))
            assert j_defect < 1e-9
            assert jstar_defect < 1e-9

    def test_factors_beyond_double_range(self):
        x = make_generator(SLetter(arr([[30]]), arr([[0]]), arr([[0]])), 1, 1)
        with pytest.raises(OverflowError):
            factor_J(x, AT_I)
        j_defect, jstar_defect = cocycle_defects(x, x, AT_I)
        assert j_defect < 1e-9
        assert jstar_defect < 1e-9

    def test_long_words_degree_two(self):
        rng = np.random.default_rng(0)
        for seed in range(20):
            x1 = compose_word(random_theta_word(2, 2, 8, seed), 2, 2)
            x2 = compose_word(random_theta_word(2, 2, 8, seed + 100), 2, 2)
            p = random_point(rng, 2, 2)
            j_defect, jstar_defect = cocycle_defects(x1, x2, p)
            assert j_defect < 1e-9
            assert jstar_defect < 1e-9


class TestZeta:
    def test_sigma(self, make_point):
        x = make_generator(SIGMA, 1, 1)
        expected, exact = generator_zeta(SIGMA, 1, 1)
        assert exact
        assert abs(expected - cmath.exp(-1j * math.pi / 4)) < 1e-15
        for p in nonvanishing_points(make_point, 1, 1, 3):
            assert abs(extract_zeta(x, p, 1e-12).zeta - expected) < 1e-8

    def test_sign_change_odd_m(self, make_point):
        x = make_generator(MINUS_ONE, 1, 1)
        expected, exact = generator_zeta(MINUS_ONE, 1, 1)
        assert not exact
        assert abs(expected - 1j) < 1e-15
        for p in nonvanishing_points(make_point, 1, 1, 3):
            zeta = extract_zeta(x, p, 1e-12).zeta
            assert abs(zeta + 1j) < 1e-8
            assert abs(zeta ** 2 - expected ** 2) < 1e-8

    def test_sign_change_even_m(self, make_point):
        x = make_generator(MINUS_ONE, 1, 2)
        expected, exact = generator_zeta(MINUS_ONE, 1, 2)
        assert exact
        assert abs(expected + 1) < 1e-15
        for p in nonvanishing_points(make_point, 1, 2, 2):
            assert abs(extract_zeta(x, p, 1e-12).zeta - expected) < 1e-8

    @pytest.mark.parametrize("letter", [
        SLetter(arr([[1, -1]]), arr([[0, 2]]), arr([[2]])),
        TLetter(arr([[2, 1], [1, -2]])),
    ])
    def test_trivial_letters(self, letter, make_point):
        x = make_generator(letter, 2, 1)
        assert generator_zeta(letter, 2, 1) == (1, True)
        for p in nonvanishing_points(make_point, 2, 1, 2):
            assert abs(extract_zeta(x, p, 1e-12).zeta - 1) < 1e-8

    def test_independent_of_point(self, make_point):
        x = compose_word(random_theta_word(1, 1, 6, seed=7), 1, 1)
        zetas = [extract_zeta(x, p).zeta for p in nonvanishing_points(make_point, 1, 1, 4)]
        for zeta in zetas:
            assert abs(zeta ** 8 - 1) < 1e-6
            assert abs(zeta - zetas[0]) < 1e-6

    def test_word_at_fixed_point(self):
        x = compose_word(random_theta_word(1, 1, 8, seed=7), 1, 1)
        passed, report = verify_functional_equation(x, SiegelJacobiPoint.create(1j, 0.3 + 0.2j), 1e-8)
        assert passed
        assert report.modulus_defect < 1e-8
        assert set(report.to_dict()) >= {"zeta", "lhs", "rhs_core", "zeta_eighth_defect"}

    @pytest.mark.parametrize("g, m", [(2, 1), (1, 2), (2, 2)])
    def test_eighth_root(self, g, m, make_point):
        for seed in range(3):
            x = compose_word(random_theta_word(g, m, 5, seed), g, m)
            p = nonvanishing_points(make_point, g, m, 1)[0]
            passed, report = verify_functional_equation(x, p, 1e-6)
            assert passed, report.to_dict()

    def test_vanishing_theta(self):
        p = SiegelJacobiPoint.create(1j, 0.5 + 0.5j)
        with pytest.raises(ThetaTooSmallError):
            extract_zeta(make_generator(SIGMA, 1, 1), p)

    def test_not_theta_element(self):
        x = JacobiGroupElement(SymplecticElement.create([[1, 1], [0, 1]]), HeisenbergElement.zero(1, 1))
        with pytest.raises(InvalidElementError):
            extract_zeta(x, AT_I)


class TestClassicalForms:
    def test_mumford(self, make_point):
        gamma = make_generator(SIGMA, 2, 1).gamma
        p = nonvanishing_points(make_point, 2, 1, 1)[0]
        passed, _ = verify_mumford(gamma, p, 1e-8)
        assert passed

    def test_mumford_needs_one_row(self, make_point):
        with pytest.raises(DimensionError):
            verify_mumford(SymplecticElement.identity(1), make_point(m=2))

    @pytest.mark.parametrize("g, m", [(1, 1), (2, 1), (1, 2), (2, 2)])
    def test_inversion_formula(self, g, m, make_point):
        for _ in range(3):
            assert inversion_defect(make_point(g=g, m=m), 1e-10) < 1e-8
