"""Tests for src/oracles.py."""

import cmath
import math

import numpy as np
import pytest

from src.errors import DimensionError, DomainError, TermBudgetExceeded
from src.oracles import (
    QuadratureSpec,
    gaussian_integral_closed,
    gaussian_integral_quadrature,
    poisson_check,
)
from src.point import SiegelJacobiPoint


class TestClosedForm:
    def test_at_i(self):
        assert abs(gaussian_integral_closed(SiegelJacobiPoint.create(1j, 0)) - 1) < 1e-15

    def test_scaled(self):
        # integral of e^{-2 pi x^2} is 2^(-1/2)
        p = SiegelJacobiPoint.create(2j, 0)
        assert abs(gaussian_integral_closed(p) - 1 / math.sqrt(2)) < 1e-15

    def test_linear_term(self):
        p = SiegelJacobiPoint.create(1j, 0.5)
        assert abs(gaussian_integral_closed(p) - cmath.exp(-0.25 * math.pi)) < 1e-14

    def test_two_rows(self):
        p = SiegelJacobiPoint.create(1j, [[0.5], [0.5]])
        assert abs(gaussian_integral_closed(p) - cmath.exp(-0.5 * math.pi)) < 1e-14


class TestQuadrature:
    def test_at_i(self):
        assert abs(gaussian_integral_quadrature(SiegelJacobiPoint.create(1j, 0)) - 1) < 1e-10

    def test_complex_point(self):
        p = SiegelJacobiPoint.create(0.3 + 0.8j, 0.2 - 0.1j)
        assert abs(gaussian_integral_quadrature(p) - gaussian_integral_closed(p)) < 1e-8

    @pytest.mark.parametrize("g, m", [(1, 1), (2, 1), (1, 2)])
    def test_random_points(self, g, m, make_point):
        for _ in range(3):
            p = make_point(g=g, m=m, min_eig=0.5)
            closed = gaussian_integral_closed(p)
            quadrature = gaussian_integral_quadrature(p, QuadratureSpec(points_per_axis=160))
            assert abs(quadrature - closed) < 1e-6 * max(1.0, abs(closed))

    def test_refinement_does_not_hurt(self, make_point):
        p = make_point(min_eig=0.5)
        closed = gaussian_integral_closed(p)
        coarse = abs(gaussian_integral_quadrature(p, QuadratureSpec(points_per_axis=64)) - closed)
        fine = abs(gaussian_integral_quadrature(p, QuadratureSpec(points_per_axis=128)) - closed)
        assert fine <= coarse + 1e-10

    def test_explicit_box(self):
        p = SiegelJacobiPoint.create(1j, 0)
        value = gaussian_integral_quadrature(p, QuadratureSpec(box_half_width=6.0, points_per_axis=128))
        assert abs(value - 1) < 1e-10

    def test_dimension_limit(self, make_point):
        with pytest.raises(DimensionError):
            gaussian_integral_quadrature(make_point(g=3))
        with pytest.raises(DimensionError):
            gaussian_integral_quadrature(make_point(g=2, m=2))

    def test_grid_limit(self, make_point):
        with pytest.raises(DomainError):
            gaussian_integral_quadrature(make_point(g=2), QuadratureSpec(points_per_axis=4000))

    @pytest.mark.parametrize("kwargs", [{"points_per_axis": 2}, {"box_half_width": 0.0},
                                        {"box_half_width": -1.0}])
    def test_spec_guards(self, kwargs):
        with pytest.raises(DomainError):
            QuadratureSpec(**kwargs)


class TestPoisson:
    def test_at_i(self):
        assert poisson_check(SiegelJacobiPoint.create(1j, 0), 1e-10) < 1e-9

    def test_identity_matrix(self):
        p = SiegelJacobiPoint.create(1j * np.eye(2), [[0.1, -0.2]])
        assert poisson_check(p, 1e-10) < 1e-9

    @pytest.mark.parametrize("g, m", [(1, 1), (2, 1), (1, 2), (2, 2)])
    def test_random_points(self, g, m, make_point):
        for _ in range(3):
            assert poisson_check(make_point(g=g, m=m), 1e-10) < 1e-8

    def test_budget(self):
        with pytest.raises(TermBudgetExceeded):
            poisson_check(SiegelJacobiPoint.create(1j, 0), 1e-10, term_budget=2)

    def test_bad_tolerance(self):
        with pytest.raises(DomainError):
            poisson_check(SiegelJacobiPoint.create(1j, 0), 0.0)
