# Copyright 2026 The almostcomplex developers
#
# This file is part of almostcomplex.
#
# almostcomplex is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# any later version.
#
# almostcomplex is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with almostcomplex.  If not, see <https://www.gnu.org/licenses/>.

"""
Testing grids and fields

"""

import unittest

import numpy as np
from numpy.testing import assert_allclose

from almostcomplex.exceptions import (DegenerateMetric, DegreeOverflow,
                                      DimensionMismatch)
from almostcomplex.fields import (GridChart, FormField, MetricField, ACSField,
                                  form_indices)


class TestGridChart(unittest.TestCase):
    """
    Test the spectral grid.
    """

    def setUp(self):
        self.chart = GridChart(8, periods=(1.0, 2.0, 1.0, 1.0))
        self.x1, self.x2, _, _ = self.chart.coordinates()

    def test_invalid(self):
        for resolution in (2, 7):
            with self.assertRaises(ValueError):
                GridChart(resolution)
        with self.assertRaises(ValueError):
            GridChart(8, periods=(1.0, 1.0, 1.0))
        with self.assertRaises(ValueError):
            GridChart(8, periods=(1.0, 1.0, 1.0, 0.0))

    def test_integrate(self):
        self.assertAlmostEqual(self.chart.integrate(np.ones(self.chart.shape)),
                               2.0)
        self.assertAlmostEqual(
            self.chart.integrate(np.sin(2 * np.pi * self.x1) ** 2), 1.0)

    def test_derivative(self):
        """Derivatives of resolved modes are exact."""
        values = np.sin(2 * np.pi * self.x1) + np.cos(np.pi * self.x2)
        grad = self.chart.gradient(values)
        assert_allclose(grad[0], 2 * np.pi * np.cos(2 * np.pi * self.x1),
                        atol=1e-12)
        assert_allclose(grad[1], -np.pi * np.sin(np.pi * self.x2), atol=1e-12)
        assert_allclose(grad[2:], 0, atol=1e-12)
        assert_allclose(self.chart.derivative(values, 1), grad[1],
                        atol=1e-12)

    def test_nyquist(self):
        """The derivative does not see the Nyquist mode."""
        nyquist = np.cos(np.pi * 8 * self.x1)
        assert_allclose(self.chart.gradient(nyquist), 0, atol=1e-12)
        assert_allclose(self.chart.remove_nyquist(nyquist + 1.0), 1.0,
                        atol=1e-12)

    def test_inverse_laplacian(self):
        values = 3.0 + np.sin(2 * np.pi * self.x1)
        assert_allclose(self.chart.inverse_laplacian(values),
                        np.sin(2 * np.pi * self.x1) / (2 * np.pi) ** 2,
                        atol=1e-12)

    def test_equality(self):
        self.assertEqual(self.chart, GridChart(8, (1.0, 2.0, 1.0, 1.0)))
        self.assertNotEqual(self.chart, GridChart(8))
        self.assertEqual(len({self.chart, GridChart(8, (1, 2, 1, 1))}), 1)


class TestFormField(unittest.TestCase):
    """
    Test form arithmetic and validation.
    """

    def setUp(self):
        self.chart = GridChart(4)
        self.x1 = self.chart.coordinates()[0]

    def test_indices(self):
        self.assertEqual(form_indices(2)[3], (1, 2))
        self.assertEqual(len(form_indices(3)), 4)
        with self.assertRaises(DegreeOverflow):
            form_indices(5)

    def test_shape(self):
        with self.assertRaises(DimensionMismatch):
            FormField(self.chart, 2, np.zeros((5,) + self.chart.shape))
        with self.assertRaises(ValueError):
            FormField(self.chart, 0, np.full(self.chart.shape, np.nan))

    def test_scalar(self):
        """0-forms accept a bare grid array."""
        f = FormField(self.chart, 0, self.x1)
        assert_allclose(f.scalar, self.x1)
        with self.assertRaises(DegreeOverflow):
            FormField.zeros(self.chart, 2).scalar

    def test_arithmetic(self):
        omega = FormField.constant(self.chart, 2, [1, 0, 0, 0, 0, 1])
        f = FormField(self.chart, 0, 1.0 + self.x1)
        scaled = omega * f - omega
        assert_allclose(scaled.components[0], self.x1)
        assert_allclose((scaled / 2).components[5], self.x1 / 2)
        self.assertAlmostEqual((-omega).sup_norm(), 1.0)
        assert_allclose((2 * omega).pointwise()[1, 2, 3, 0],
                        [2, 0, 0, 0, 0, 2])

    def test_mismatch(self):
        omega = FormField.zeros(self.chart, 2)
        with self.assertRaises(DimensionMismatch):
            omega + FormField.zeros(self.chart, 1)
        with self.assertRaises(DimensionMismatch):
            omega + FormField.zeros(GridChart(6), 2)
        with self.assertRaises(TypeError):
            omega + 1.0
        with self.assertRaises(TypeError):
            omega * FormField.zeros(self.chart, 1)

    def test_pointwise_layout(self):
        values = np.random.RandomState(0).standard_normal(self.chart.shape
                                                           + (6,))
        form = FormField.from_pointwise(self.chart, values)
        self.assertEqual(form.components.shape, (6,) + self.chart.shape)
        assert_allclose(form.pointwise(), values)


class TestMatrixFields(unittest.TestCase):
    """
    Test metrics and almost complex structures on the grid.
    """

    def setUp(self):
        self.chart = GridChart(4)
        self.u = 0.1 * np.sin(2 * np.pi * self.chart.coordinates()[0])

    def test_flat(self):
        g = MetricField.flat(self.chart)
        self.assertTrue(g.is_identity)
        assert_allclose(g.sqrt_det, 1.0)
        assert_allclose(g.compound(2), np.broadcast_to(
            np.eye(6), self.chart.shape + (6, 6)))

    def test_conformal(self):
        g = MetricField.conformal(self.chart, self.u)
        self.assertFalse(g.is_identity)
        assert_allclose(g.sqrt_det, np.exp(4 * self.u))
        # 2-forms are conformally invariant in dimension four
        assert_allclose(g.mass(2)[..., 0, 0], 1.0)
        assert_allclose(g.mass(1)[..., 2, 2], np.exp(2 * self.u))

    def test_degenerate(self):
        with self.assertRaises(DegenerateMetric):
            MetricField.constant(self.chart, np.diag([1., 1, 0, 1]))
        with self.assertRaises(DimensionMismatch):
            MetricField(self.chart, np.eye(4))

    def test_acs(self):
        J = ACSField.standard(self.chart)
        self.assertTrue(J.is_constant())
        omega = J.fundamental_form(MetricField.flat(self.chart))
        assert_allclose(omega.pointwise()[0, 1, 2, 3], [1, 0, 0, 0, 0, 1])
        assert_allclose((-J).values, -J.values)
        with self.assertRaises(ValueError):
            ACSField.constant(self.chart, np.eye(4))

    def test_non_constant(self):
        c, s = np.cos(self.u), np.sin(self.u)
        values = np.zeros(self.chart.shape + (4, 4))
        # rotate J e1 inside the (e2, e3) plane
        rotation = np.broadcast_to(np.eye(4), values.shape).copy()
        rotation[..., 1, 1] = c
        rotation[..., 1, 2] = -s
        rotation[..., 2, 1] = s
        rotation[..., 2, 2] = c
        J0 = np.broadcast_to(ACSField.standard(self.chart).values,
                             values.shape)
        values = rotation @ J0 @ np.swapaxes(rotation, -1, -2)
        J = ACSField(self.chart, values)
        self.assertFalse(J.is_constant())
