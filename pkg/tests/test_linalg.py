"""Tests for src/linalg.py."""

import cmath
import math

import numpy as np
import pytest

from src.errors import DimensionError, DomainError, InputFormatError, SingularMatrixError
from src.linalg import (
    det,
    det_over_i_half_power,
    int_matrix_from_json,
    inverse,
    matrix_from_json,
    matrix_to_json,
    min_eigenvalue_sym,
    principal_half_power,
    sigma,
)


class TestPrincipalHalfPower:
    @pytest.mark.parametrize("z, kappa, expected", [
        (4, 1, 2),
        (-1, 1, 1j),
        (complex(-1, -0.0), 1, 1j),
        (-4, 2, -4),
        (1j, 1, cmath.exp(1j * math.pi / 4)),
        (-1j, 1, cmath.exp(-1j * math.pi / 4)),
        (4, -1, 0.5),
        (0, 0, 1),
        (0, 3, 0),
    ])
    def test_examples(self, z, kappa, expected):
        assert abs(principal_half_power(z, kappa) - expected) < 1e-14

    def test_zero_to_negative_power(self):
        with pytest.raises(DomainError):
            principal_half_power(0, -1)

    def test_square_recovers_base(self, rng):
        for z in rng.normal(size=50) + 1j * rng.normal(size=50):
            assert abs(principal_half_power(z, 2) - z) < 1e-12 * abs(z)

    def test_argument_range(self, rng):
        samples = list(rng.normal(size=50) + 1j * rng.normal(size=50)) + [-2.0, -0.5 + 0j]
        for z in samples:
            arg = cmath.phase(principal_half_power(z, 1))
            assert -math.pi / 2 < arg <= math.pi / 2


class TestDeterminant:
    def test_2x2(self):
        assert abs(det([[3.0, 8.0], [4.0, 6.0]]) - (-14.0)) < 1e-12

    def test_identity(self):
        assert abs(det(np.eye(5)) - 1) < 1e-14

    def test_singular(self):
        assert abs(det([[1.0, 2.0], [2.0, 4.0]])) < 1e-12

    def test_product_rule(self, rng):
        for _ in range(20):
            a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            lhs = det(a @ b)
            rhs = det(a) * det(b)
            assert abs(lhs - rhs) < 1e-9 * abs(rhs)

    def test_matches_numpy(self, rng):
        a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        assert abs(det(a) - np.linalg.det(a)) < 1e-12 * abs(np.linalg.det(a))

    def test_dimension_guard(self):
        with pytest.raises(DimensionError):
            det(np.eye(9))
        with pytest.raises(DimensionError):
            det(np.ones((2, 3)))


class TestInverse:
    def test_roundtrip(self, rng):
        for n in range(1, 6):
            a = 3 * np.eye(n) + rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            assert np.linalg.cond(a) < 1e6
            product = a @ inverse(a)
            assert np.max(np.abs(product - np.eye(n))) < 1e-10

    def test_singular_reports_pivot(self):
        with pytest.raises(SingularMatrixError) as info:
            inverse([[1.0, 2.0], [2.0, 4.0]])
        assert info.value.pivot < 1e-12

    def test_needs_pivoting(self):
        a = np.array([[0.0, 1.0], [1.0, 0.0]])
        assert np.max(np.abs(inverse(a) - a)) < 1e-15


class TestMinEigenvalue:
    def test_2x2_closed_form(self, rng):
        for _ in range(20):
            a, b, c = rng.normal(size=3)
            expected = (a + c) / 2 - math.sqrt(((a - c) / 2) ** 2 + b * b)
            assert abs(min_eigenvalue_sym([[a, b], [b, c]]) - expected) < 1e-9

    def test_3x3_characteristic_polynomial(self, rng):
        for _ in range(20):
            x = rng.normal(size=(3, 3))
            y = x + x.T
            roots = np.roots(np.poly(y)).real
            assert abs(min_eigenvalue_sym(y) - roots.min()) < 1e-9

    def test_rejects_asymmetric(self):
        with pytest.raises(DomainError):
            min_eigenvalue_sym([[1.0, 2.0], [0.0, 1.0]])


class TestDetOverIHalfPower:
    def test_scalar(self):
        assert abs(det_over_i_half_power(np.array([[2j]]), 1) - math.sqrt(2)) < 1e-14

    def test_identity(self):
        assert abs(det_over_i_half_power(1j * np.eye(2), 1) - 1) < 1e-14

    def test_negative_power(self):
        assert abs(det_over_i_half_power(np.array([[2j]]), -1) - 1 / math.sqrt(2)) < 1e-14

    def test_agrees_with_principal_branch_up_to_degree_two(self, make_point):
        for g in (1, 2):
            for _ in range(10):
                p = make_point(g=g)
                d = det(p.omega / 1j)
                for kappa in (1, 2, 3):
                    expected = principal_half_power(d, kappa)
                    got = det_over_i_half_power(p.omega, kappa)
                    assert abs(got - expected) < 1e-10 * max(1.0, abs(expected))


class TestSigma:
    def test_trace(self):
        assert sigma(np.array([[1 + 1j, 5], [7, 2]])) == 3 + 1j


class TestJsonCodec:
    def test_mixed_entries(self):
        m = matrix_from_json([[[1, 2], 3]])
        assert m.shape == (1, 2)
        assert m[0, 0] == 1 + 2j
        assert m[0, 1] == 3

    def test_encode(self):
        assert matrix_to_json(np.array([[1 + 2j]])) == [[[1.0, 2.0]]]

    @pytest.mark.parametrize("data", [
        [],
        [[]],
        [[1, 2], [3]],
        [["a"]],
        [[True]],
        [[[1, 2, 3]]],
        [[float("inf")]],
        "matrix",
    ])
    def test_rejects(self, data):
        with pytest.raises(InputFormatError):
            matrix_from_json(data)

    def test_shape_check(self):
        with pytest.raises(InputFormatError):
            matrix_from_json([[1, 2]], shape=(2, 2))

    def test_integer_matrix(self):
        assert int_matrix_from_json([[1, -2], [0, 3]]).dtype == np.int64
        with pytest.raises(InputFormatError):
            int_matrix_from_json([[1.5]])
        with pytest.raises(InputFormatError):
            int_matrix_from_json([[False]])
