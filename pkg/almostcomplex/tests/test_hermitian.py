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
Testing the Hermitian geometry on the torus grid

"""

import unittest

import numpy as np
from numpy.testing import assert_allclose

from almostcomplex import hermitian, pointwise
from almostcomplex.exceptions import DimensionMismatch, InputNotAntiInvariant
from almostcomplex.families import standard_beta
from almostcomplex.fields import GridChart, FormField, MetricField, ACSField
from almostcomplex.utils import random_form


def _conformal(chart, amplitude=0.05):
    x1, x2, _, _ = chart.coordinates()
    u = amplitude * (np.sin(2 * np.pi * x1) + np.cos(2 * np.pi * x2))
    return u, MetricField.conformal(chart, u)


def _rotated(chart, amplitude=0.1):
    # cos t omega + sin t beta with t depending on x1
    x1 = chart.coordinates()[0]
    t = amplitude * np.sin(2 * np.pi * x1)
    omega, beta, _ = standard_beta(chart)
    omega_tilde = omega * np.cos(t) + beta * np.sin(t)
    g = MetricField.flat(chart)
    J = ACSField(chart, pointwise.acs_from_form(g.values,
                                                omega_tilde.pointwise()))
    return g, J


class TestLeeForm(unittest.TestCase):
    """
    Test the Lee form and the Gauduchon gauge.
    """

    def setUp(self):
        self.chart = GridChart(12)
        self.J = ACSField.standard(self.chart)

    def test_flat(self):
        """The flat Kaehler structure has vanishing Lee form."""
        g = MetricField.flat(self.chart)
        theta = hermitian.lee_form(g, self.J)
        self.assertEqual(theta.degree, 1)
        assert_allclose(theta.components, 0, atol=1e-12)
        self.assertLess(hermitian.gauduchon_residual(g, self.J), 1e-12)

    def test_conformal(self):
        r"""A conformal factor :math:`e^{2u}` gives :math:`\theta = 2du`."""
        u, g = _conformal(self.chart)
        theta = hermitian.lee_form(g, self.J)
        assert_allclose(theta.components, 2 * self.chart.gradient(u),
                        atol=1e-8)
        self.assertGreater(hermitian.gauduchon_residual(g, self.J), 1e-3)

    def test_gauduchon_gauge(self):
        """The gauge undoes a conformal factor up to the volume constant."""
        x1 = self.chart.coordinates()[0]
        u0 = 0.05 * np.sin(2 * np.pi * x1)
        g = MetricField.conformal(self.chart, u0)
        u, g_gauduchon = hermitian.gauduchon_gauge(g, self.J, tol=1e-9)
        c = 0.25 * np.log(np.mean(np.exp(4 * u0)))
        assert_allclose(u.scalar + u0, c, atol=1e-7)
        self.assertLess(hermitian.gauduchon_residual(g_gauduchon, self.J),
                        1e-7)

    def test_constancy_flat(self):
        """The trace of omega itself is the constant 2."""
        g = MetricField.flat(self.chart)
        omega = self.J.fundamental_form(g)
        report = hermitian.constancy_check(omega, g, self.J)
        self.assertTrue(report.gauduchon)
        assert_allclose(report.trace.scalar, 2.0, atol=1e-12)
        self.assertLess(report.deviation, 1e-12)

    def test_constancy_not_gauduchon(self):
        """A non-Gauduchon metric is reported and logged."""
        _, g = _conformal(self.chart)
        # constant self-dual forms stay harmonic in the conformal class
        omega, _, _ = standard_beta(self.chart)
        with self.assertLogs('almostcomplex.hermitian', 'WARNING') as logs:
            report = hermitian.constancy_check(omega, g, self.J)
        self.assertIn('not Gauduchon', logs.output[0])
        self.assertFalse(report.gauduchon)
        self.assertGreater(report.deviation, 1e-3)


class TestNijenhuis(unittest.TestCase):
    """
    Test the Nijenhuis tensor and the signature constraint.
    """

    def test_constant(self):
        """Constant structures are integrable."""
        chart = GridChart(8)
        N, rank = hermitian.nijenhuis_field(ACSField.standard(chart))
        assert_allclose(N, 0, atol=1e-14)
        self.assertEqual(int(rank.max()), 0)

    def test_rotated(self):
        """The image of N has dimension 0 or 2 and vanishes with dt."""
        chart = GridChart(12)
        _, J = _rotated(chart)
        N, rank = hermitian.nijenhuis_field(J, tol=1e-6)
        self.assertTrue(set(np.unique(rank).tolist()) <= {0, 2})
        self.assertEqual(int(rank.max()), 2)
        # dt = 0 at x1 = 1/4
        self.assertEqual(int(rank[3].max()), 0)
        # antisymmetric in the vector arguments
        assert_allclose(N, -np.swapaxes(N, -3, -2), atol=1e-12)

    def test_signature_constraint(self):
        self.assertTrue(hermitian.signature_constraint(0, 0))
        self.assertFalse(hermitian.signature_constraint(4, 0))
        self.assertTrue(hermitian.signature_constraint(6, -5))
        with self.assertRaises(ValueError):
            hermitian.signature_constraint(0.5, 0)


class TestCurvature(unittest.TestCase):
    """
    Test connection and curvature of metrics on the grid.
    """

    def setUp(self):
        self.chart = GridChart(12)

    def test_flat(self):
        """The flat metric has zero connection and curvature."""
        g = MetricField.flat(GridChart(8))
        connection = hermitian.levi_civita(g)
        assert_allclose(connection.gamma, 0)
        curv = hermitian.curvature(connection)
        assert_allclose(curv.riemann, 0)
        assert_allclose(curv.scalar, 0)

    def test_conformally_flat(self):
        """Weyl tensor vanishes and the scalar curvature is known."""
        u, g = _conformal(self.chart)
        connection = hermitian.levi_civita(g)
        self.assertLess(connection.compatibility_residual(), 1e-8)
        self.assertLess(connection.symmetry_residual(), 1e-12)
        curv = hermitian.curvature(connection)
        self.assertLess(curv.bianchi, 1e-8)
        assert_allclose(curv.w_plus, 0, atol=1e-6)
        assert_allclose(curv.w_minus, 0, atol=1e-6)
        grad = self.chart.gradient(u)
        laplace = sum(self.chart.gradient(grad[a])[a] for a in range(4))
        expected = -6 * np.exp(-2 * u) * (laplace + np.sum(grad ** 2, axis=0))
        assert_allclose(curv.scalar, expected, atol=1e-6)

    def test_product(self):
        """Scalar curvature of a product of conformal surfaces."""
        x1, _, x3, _ = self.chart.coordinates()
        a = 0.05 * np.sin(2 * np.pi * x1)
        b = 0.05 * np.cos(2 * np.pi * x3)
        values = np.zeros(self.chart.shape + (4, 4))
        for i, factor in enumerate((a, a, b, b)):
            values[..., i, i] = np.exp(2 * factor)
        g = MetricField(self.chart, values)
        curv = hermitian.curvature(hermitian.levi_civita(g))
        k2 = (2 * np.pi) ** 2
        expected = (2 * np.exp(-2 * a) * k2 * a
                    + 2 * np.exp(-2 * b) * k2 * b)
        assert_allclose(curv.scalar, expected, atol=1e-6)

    def test_hermitian_weyl(self):
        """Conformally flat metrics have Hermitian type Weyl tensor."""
        J = ACSField.standard(self.chart)
        g = MetricField.flat(self.chart)
        self.assertLess(hermitian.hermitian_weyl_residual(g, J), 1e-12)
        _, g = _conformal(self.chart)
        self.assertLess(hermitian.hermitian_weyl_residual(g, J), 1e-6)


class TestWeitzenbock(unittest.TestCase):
    """
    Test the integrated Weitzenböck formula for 2-forms.
    """

    def test_flat_random(self):
        """Random band-limited forms on the flat torus."""
        chart = GridChart(12)
        g = MetricField.flat(chart)
        curv = hermitian.curvature(hermitian.levi_civita(g))
        for seed in range(3):
            psi = random_form(chart, 2, max_mode=2, random_state=seed)
            self.assertLess(hermitian.weitzenbock_residual(psi, g, curv),
                            1e-8)

    def test_constant(self):
        """Constant forms give zero on both sides."""
        chart = GridChart(8)
        g = MetricField.flat(chart)
        psi = FormField.constant(chart, 2, [1, 2, 0, 0, -1, 3])
        self.assertLess(hermitian.weitzenbock_residual(psi, g), 1e-12)

    def test_conformally_flat(self):
        """Curvature terms balance on a conformally flat metric."""
        chart = GridChart(12)
        _, g = _conformal(chart)
        psi = random_form(chart, 2, max_mode=1, random_state=7)
        self.assertLess(hermitian.weitzenbock_residual(psi, g), 1e-6)

    def test_degree(self):
        chart = GridChart(8)
        with self.assertRaises(DimensionMismatch):
            hermitian.weitzenbock_residual(FormField.zeros(chart, 1),
                                           MetricField.flat(chart))


class TestWellBalanced(unittest.TestCase):
    """
    Test the well-balanced residuals and the nabla omega identity.
    """

    def setUp(self):
        self.chart = GridChart(12)

    def test_kaehler(self):
        """All residuals vanish for the flat Kaehler structure."""
        g = MetricField.flat(self.chart)
        J = ACSField.standard(self.chart)
        assert_allclose(hermitian.well_balanced_residuals(g, J), 0,
                        atol=1e-12)

    def test_iv_equals_v(self):
        """The frame conditions agree pointwise."""
        g, J = _rotated(self.chart)
        _, res_iv, res_v = hermitian.well_balanced_residuals(g, J)
        assert_allclose(res_iv, res_v, rtol=1e-6, atol=1e-10)

    def test_frame_independence(self):
        """Rotating the frame leaves the residual unchanged."""
        g, J = _rotated(self.chart)
        frame = hermitian.local_frame(g, J)
        self.assertLess(frame.residual, 1e-8)
        x2 = self.chart.coordinates()[1]
        s = (0.3 * np.sin(2 * np.pi * x2))[..., None]
        phi = np.cos(s) * frame.phi + np.sin(s) * frame.j_phi
        reference = hermitian.well_balanced_residuals(g, J)[2]
        rotated = hermitian.well_balanced_residuals(g, J, phi=phi)[2]
        assert_allclose(rotated, reference, rtol=1e-8, atol=1e-12)

    def test_nabla_omega(self):
        """Covariant derivative of omega from N and the Lee form."""
        J = ACSField.standard(self.chart)
        _, g = _conformal(self.chart)
        self.assertLess(hermitian.nabla_omega_residual(g, J), 1e-7)
        g, J = _rotated(self.chart)
        self.assertLess(hermitian.nabla_omega_residual(g, J), 1e-7)

    def test_j_beta_closure(self):
        """J of a constant anti-invariant form stays closed."""
        chart = GridChart(8)
        J = ACSField.standard(chart)
        omega, beta, _ = standard_beta(chart)
        self.assertLess(hermitian.j_beta_closure(beta, J), 1e-12)
        with self.assertRaises(InputNotAntiInvariant):
            hermitian.j_beta_closure(omega, J)


if __name__ == '__main__':
    unittest.main()
