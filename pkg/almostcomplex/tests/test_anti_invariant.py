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
Testing the anti-invariant cohomology computations

"""

import unittest

import numpy as np
from numpy.testing import assert_allclose

from almostcomplex import anti_invariant, pointwise
from almostcomplex.calculus import ext_d, star, l2_inner, l2_norm
from almostcomplex.exceptions import (InputNotAntiInvariant, GapUndetected,
                                      IdenticalStructures)
from almostcomplex.families import (standard_beta, lee_structure,
                                    build_from_alpha, torus_family, bump_path)
from almostcomplex.fields import GridChart, FormField, MetricField, ACSField
from almostcomplex.utils import (random_form, random_metric, random_structure,
                                 random_admissible_triple)


def _anti(form, J):
    _, anti = pointwise.split_J(form.pointwise(), J.values)
    return FormField.from_pointwise(form.chart, anti)


def _r_structure(chart):
    g = MetricField.flat(chart)
    omega, beta, _ = standard_beta(chart)
    r = 0.5 * np.sin(2 * np.pi * chart.coordinates()[0])
    return build_from_alpha(g, omega, beta, r)


class TestLejmiOperator(unittest.TestCase):
    """
    Test the operator P on anti-invariant forms.
    """

    def setUp(self):
        self.chart = GridChart(8)
        self.g = random_metric(self.chart, random_state=0)
        self.J = random_structure(self.g, random_state=1)

    def test_constant_kernel(self):
        """Constant anti-invariant forms of the standard structure."""
        g = MetricField.flat(self.chart)
        J = ACSField.standard(self.chart)
        _, beta, j_beta = standard_beta(self.chart)
        for form in (beta, j_beta):
            self.assertLess(anti_invariant.lejmi_P(form, g, J).sup_norm(),
                            1e-12)

    def test_not_anti_invariant(self):
        omega = self.J.fundamental_form(self.g)
        with self.assertRaises(InputNotAntiInvariant):
            anti_invariant.lejmi_P(omega, self.g, self.J)

    def test_formulas_agree(self):
        r"""P through :math:`d\delta` and through the Hodge Laplacian."""
        psi = _anti(random_form(self.chart, 2, random_state=2), self.J)
        first = anti_invariant.lejmi_P(psi, self.g, self.J)
        second = anti_invariant.lejmi_P_laplacian(psi, self.g, self.J)
        self.assertLess((first - second).sup_norm() / first.sup_norm(), 1e-8)

    def test_self_adjoint(self):
        a = _anti(random_form(self.chart, 2, random_state=3), self.J)
        b = _anti(random_form(self.chart, 2, random_state=4), self.J)
        Pa = anti_invariant.lejmi_P(a, self.g, self.J)
        Pb = anti_invariant.lejmi_P(b, self.g, self.J)
        scale = l2_norm(Pa, self.g) * l2_norm(b, self.g)
        self.assertLess(abs(l2_inner(Pa, b, self.g) - l2_inner(a, Pb, self.g))
                        / scale, 1e-9)
        self.assertGreaterEqual(l2_inner(Pa, a, self.g), 0.0)

    def test_frame(self):
        phi, j_phi = anti_invariant.anti_invariant_frame(self.g, self.J)
        assert_allclose(pointwise.norm2(phi, self.g.values), 2.0)
        assert_allclose(pointwise.norm2(j_phi, self.g.values), 2.0)
        assert_allclose(pointwise.inner(phi, j_phi, self.g.values), 0.0,
                        atol=1e-12)
        _, anti = pointwise.split_J(phi, self.J.values)
        assert_allclose(anti, phi, atol=1e-12)


class TestLejmiEigensolver(unittest.TestCase):
    """
    Test the kernel dimension of P on the flat torus.
    """

    def setUp(self):
        self.chart = GridChart(8)
        self.g = MetricField.flat(self.chart)

    def test_standard(self):
        """h- = 2 for the standard structure with a clear gap."""
        J = ACSField.standard(self.chart)
        solver = anti_invariant.LejmiEigensolver(random_state=0).fit(self.g,
                                                                     J)
        self.assertEqual(solver.kernel_dim_, 2)
        self.assertGreaterEqual(solver.gap_ratio_, 1e3)
        self.assertEqual(len(solver.kernel_), 2)
        self.assertEqual(solver.report_.resolution, 8)
        self.assertTrue(np.all(np.diff(solver.eigenvalues_) >= 0))
        omega = J.fundamental_form(self.g).pointwise()
        for psi in solver.kernel_:
            self.assertAlmostEqual(l2_norm(psi, self.g), 1.0)
            self.assertLess(ext_d(psi).sup_norm(), 1e-6)
            self.assertLess((star(psi, self.g) - psi).sup_norm(), 1e-6)
            self.assertLess(np.max(np.abs(pointwise.inner(psi.pointwise(),
                                                          omega))), 1e-6)

    def test_report(self):
        report = anti_invariant.h_minus(self.g, ACSField.standard(self.chart))
        record = report.to_dict()
        self.assertEqual(record['kernel_dim'], 2)
        self.assertEqual(len(record['eigenvalues']),
                         len(report.eigenvalues))
        self.assertEqual(anti_invariant.h_plus(
            self.g, ACSField.standard(self.chart)), 4)

    def test_conformal(self):
        """A conformal change keeps the constant anti-invariant forms."""
        x1 = self.chart.coordinates()[0]
        g = MetricField.conformal(self.chart, 0.05 * np.sin(2 * np.pi * x1))
        J = ACSField.standard(self.chart)
        self.assertEqual(anti_invariant.h_minus(g, J).kernel_dim, 2)
        self.assertEqual(anti_invariant.rank_test_h_minus(g, J).dim, 2)

    def test_non_constant(self):
        """h- = 1 for a non-constant deformation, equal to the rank test."""
        J = _r_structure(self.chart)
        report = anti_invariant.h_minus(self.g, J)
        self.assertEqual(report.kernel_dim, 1)
        self.assertEqual(anti_invariant.rank_test_h_minus(self.g, J).dim, 1)

    def test_family(self):
        x1 = self.chart.coordinates()[0]
        J, predicted = torus_family(np.cos(2 * np.pi * x1),
                                    np.sin(2 * np.pi * x1), 0.0,
                                    chart=self.chart)
        self.assertEqual(predicted, 1)
        self.assertEqual(anti_invariant.h_minus(self.g, J).kernel_dim, 1)

    def test_random_family(self):
        """A random admissible triple has no anti-invariant classes."""
        triple = random_admissible_triple(self.chart, random_state=0)
        J, predicted = torus_family(*triple, chart=self.chart)
        self.assertEqual(predicted, 0)
        report = anti_invariant.h_minus(self.g, J)
        self.assertEqual(report.kernel_dim, 0)
        self.assertEqual(anti_invariant.rank_test_h_minus(self.g, J).dim,
                         report.kernel_dim)

    def test_first_nonzero(self):
        """The smallest Ritz pairs converge past the kernel."""
        J = ACSField.standard(self.chart)
        solver = anti_invariant.LejmiEigensolver(random_state=3).fit(self.g,
                                                                     J)
        self.assertGreaterEqual(solver.n_iter_, solver.min_blocks)
        self.assertLessEqual(solver.residuals_[-1], solver.residual_tol)
        assert_allclose(solver.eigenvalues_[:2], 0.0, atol=1e-9)
        # k^2 / (k^2 + shift) at the first nonzero frequency
        self.assertAlmostEqual(solver.eigenvalues_[2], 0.5, places=6)
        self.assertAlmostEqual(solver.eigenvalues_[3], 0.5, places=6)

    def test_unresolved_gap(self):
        J = ACSField.standard(self.chart)
        with self.assertRaises(GapUndetected):
            anti_invariant.LejmiEigensolver(n_converged=2).fit(self.g, J)
        with self.assertRaises(ValueError):
            anti_invariant.LejmiEigensolver(n_converged=0).fit(self.g, J)

    def test_type(self):
        with self.assertRaises(TypeError):
            anti_invariant.LejmiEigensolver().fit(np.eye(4),
                                                  ACSField.standard(
                                                      self.chart))


class TestTaming(unittest.TestCase):
    """
    Test the taming criterion.
    """

    def test_verdict(self):
        self.assertEqual(anti_invariant.tame_verdict(3, 2),
                         (1, 'tamed-criterion-met'))
        self.assertEqual(anti_invariant.tame_verdict(2, 2, heuristic=True),
                         (0, 'tamed-criterion-not-met (heuristic)'))

    def test_standard(self):
        chart = GridChart(8)
        self.assertEqual(anti_invariant.tame_indicator(
            MetricField.flat(chart), ACSField.standard(chart)),
            (1, 'tamed-criterion-met'))


class TestPathScan(unittest.TestCase):
    """
    Test kernel dimensions along paths.
    """

    def setUp(self):
        self.chart = GridChart(8)

    def test_samples(self):
        rule = lambda t: ACSField.standard(self.chart)  # noqa: E731
        with self.assertRaises(ValueError):
            anti_invariant.PathOfACS([0.5, 0.2], rule)
        with self.assertRaises(ValueError):
            anti_invariant.PathOfACS([0.0, 1.5], rule)
        with self.assertRaises(TypeError):
            anti_invariant.PathOfACS([0.0], None)
        self.assertEqual(len(anti_invariant.PathOfACS([0.0, 1.0], rule)), 2)

    def test_bump_path(self):
        """The two-bump deformation removes the anti-invariant classes."""
        samples = anti_invariant.path_scan(bump_path(self.chart, [0.0, 1.0]))
        self.assertEqual([s.kernel_dim for s in samples], [2, 0])
        self.assertFalse(any(s.flagged for s in samples))

    def test_flag_dip(self):
        """An isolated drop between two larger values is flagged."""
        J_std = ACSField.standard(self.chart)
        J_r = _r_structure(self.chart)
        path = anti_invariant.PathOfACS(
            [0.0, 0.5, 1.0], lambda t: J_r if t == 0.5 else J_std)
        samples = anti_invariant.path_scan(path)
        self.assertEqual([s.kernel_dim for s in samples], [2, 1, 2])
        self.assertEqual([s.flagged for s in samples], [False, True, False])


class TestRankTest(unittest.TestCase):
    """
    Test the rank test and the bounds for several structures.
    """

    def setUp(self):
        self.chart = GridChart(8)
        self.g = MetricField.flat(self.chart)
        omega, beta, _ = standard_beta(self.chart)
        self.J_std = ACSField.standard(self.chart)
        self.J_lee = lee_structure(self.g, omega, beta)
        self.J_r = _r_structure(self.chart)

    def test_joint(self):
        """The standard and the Lee structure share the class of J beta."""
        result = anti_invariant.joint_rank_test(self.g,
                                                [self.J_std, self.J_lee])
        self.assertEqual(result.dim, 1)
        _, _, j_beta = standard_beta(self.chart)
        form = result.forms[0]
        overlap = abs(l2_inner(form, j_beta)) / l2_norm(j_beta)
        self.assertAlmostEqual(overlap, 1.0)

    def test_joint_fine_grid(self):
        chart = GridChart(12)
        g = MetricField.flat(chart)
        omega, beta, _ = standard_beta(chart)
        result = anti_invariant.joint_rank_test(
            g, [ACSField.standard(chart), lee_structure(g, omega, beta)])
        self.assertEqual(result.dim, 1)
        self.assertEqual(result.singular_values.shape, (3,))
        self.assertEqual(len(result.forms), 1)

    def test_bound(self):
        values, holds = anti_invariant.max_structures_bound(
            self.g, [self.J_std, self.J_lee, self.J_r])
        self.assertEqual(values, [2, 2, 1])
        self.assertTrue(holds)

    def test_identical(self):
        with self.assertRaises(IdenticalStructures):
            anti_invariant.max_structures_bound(self.g,
                                                [self.J_std, -self.J_std])
