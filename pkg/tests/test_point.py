"""Tests for src/point.py."""

import numpy as np
import pytest

from src.errors import InputFormatError, InvalidPointError
from src.point import SiegelJacobiPoint


class TestCreate:
    def test_scalars(self):
        p = SiegelJacobiPoint.create(1j, 0.5)
        assert (p.g, p.m) == (1, 1)
        assert p.min_eigenvalue() == 1.0

    def test_symmetrises(self):
        omega = np.array([[1j, 0.2], [0.2 + 1e-14, 2j]])
        p = SiegelJacobiPoint.create(omega, [[0, 0]])
        assert np.array_equal(p.omega, p.omega.T)

    @pytest.mark.parametrize("omega, z", [
        ([[1j, 0.5], [0.1, 1j]], [[0, 0]]),
        ([[1j, 2j], [2j, 1j]], [[0, 0]]),
        (-1j, 0),
        (1j, [[0, 0]]),
        (np.zeros((0, 0)), np.zeros((1, 0))),
        (1j, float("nan")),
    ])
    def test_rejects(self, omega, z):
        with pytest.raises(InvalidPointError):
            SiegelJacobiPoint.create(omega, z)

    def test_read_only(self):
        p = SiegelJacobiPoint.create(1j, 0)
        with pytest.raises(ValueError):
            p.omega[0, 0] = 2j


class TestJson:
    def test_decode(self):
        p = SiegelJacobiPoint.from_dict({"omega": [[[0.5, 1]]], "z": [[0.25]]})
        assert p.omega[0, 0] == 0.5 + 1j
        assert p.z[0, 0] == 0.25

    def test_encode(self):
        assert SiegelJacobiPoint.create(1j, 0).to_dict() == {"omega": [[[0.0, 1.0]]], "z": [[[0.0, 0.0]]]}

    @pytest.mark.parametrize("data", [[1, 2], {"omega": [[[0, 1]]]}, {"omega": [[[0, 1]]], "z": "x"}])
    def test_rejects(self, data):
        with pytest.raises(InputFormatError):
            SiegelJacobiPoint.from_dict(data)

    def test_invalid_point(self):
        with pytest.raises(InvalidPointError):
            SiegelJacobiPoint.from_dict({"omega": [[[0, -1]]], "z": [[0]]})
