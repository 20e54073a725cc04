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
Testing the pointwise linear algebra on 2-forms

"""

import unittest

import numpy as np
from numpy.testing import assert_allclose

from almostcomplex import pointwise
from almostcomplex.exceptions import (DegenerateMetric, IncompatiblePair,
                                      NotOnTwistorFiber,
                                      InputNotAntiInvariant)

OMEGA = np.array([1., 0, 0, 0, 0, 1])
BETA = np.array([0., 1, 0, 0, -1, 0])
J_BETA = np.array([0., 0, 1, 1, 0, 0])


def _random_pair(seed):
    rng = np.random.RandomState(seed)
    A = rng.standard_normal((4, 4))
    g = A @ A.T + 4 * np.eye(4)
    raw = pointwise.project_self_dual(rng.standard_normal(6), g)
    omega = raw * np.sqrt(2 / pointwise.norm2(raw, g))
    return g, pointwise.acs_from_form(g, omega), omega


class TestHodgeStar(unittest.TestCase):
    """
    Test the Hodge star and the self-dual projection.
    """

    def test_basis(self):
        r"""Euclidean star of the basis forms for the orientation e1234."""
        expected = np.array([
            [0, 0, 0, 0, 0, 1],
            [0, 0, 0, 0, -1, 0],
            [0, 0, 0, 1, 0, 0],
            [0, 0, 1, 0, 0, 0],
            [0, -1, 0, 0, 0, 0],
            [1, 0, 0, 0, 0, 0],
        ])
        assert_allclose(pointwise.hodge_star(np.eye(6)), expected)

    def test_involution(self):
        """The star squares to the identity on 2-forms in dimension four."""
        g, _, _ = _random_pair(0)
        alpha = np.random.RandomState(1).standard_normal(6)
        twice = pointwise.hodge_star(pointwise.hodge_star(alpha, g), g)
        assert_allclose(twice, alpha, atol=1e-12)

    def test_self_dual(self):
        """omega, beta and J beta are self-dual."""
        for form in (OMEGA, BETA, J_BETA):
            assert_allclose(pointwise.project_self_dual(form), form)

    def test_degenerate_metric(self):
        with self.assertRaises(DegenerateMetric):
            pointwise.hodge_star(OMEGA, np.diag([1., 1, 1, -1]))


class TestSplitJ(unittest.TestCase):
    """
    Test the splitting into invariant and anti-invariant parts.
    """

    def setUp(self):
        self.J = pointwise.standard_acs()

    def test_standard(self):
        inv, anti = pointwise.split_J(OMEGA + BETA, self.J)
        assert_allclose(inv, OMEGA)
        assert_allclose(anti, BETA)

    def test_idempotent(self):
        """Splitting a part again reproduces it."""
        _, J, _ = _random_pair(2)
        alpha = np.random.RandomState(3).standard_normal(6)
        inv, anti = pointwise.split_J(alpha, J)
        assert_allclose(pointwise.split_J(inv, J)[0], inv, atol=1e-12)
        assert_allclose(pointwise.split_J(anti, J)[1], anti, atol=1e-12)
        assert_allclose(inv + anti, alpha, atol=1e-12)

    def test_orthogonal(self):
        """Invariant and anti-invariant parts are g-orthogonal."""
        g, J, _ = _random_pair(4)
        alpha = np.random.RandomState(5).standard_normal(6)
        inv, anti = pointwise.split_J(alpha, J)
        self.assertLess(abs(pointwise.inner(inv, anti, g)), 1e-12)

    def test_batched(self):
        """Leading axes are broadcast."""
        alpha = np.tile(OMEGA + BETA, (3, 2, 1))
        J = np.broadcast_to(self.J, (3, 2, 4, 4))
        inv, anti = pointwise.split_J(alpha, J)
        self.assertEqual(anti.shape, (3, 2, 6))
        assert_allclose(anti[2, 1], BETA)

    def test_j_act(self):
        r""":math:`J\beta = e^{14} + e^{23}` and :math:`J^2 = -1`."""
        j_beta = pointwise.j_act(BETA, self.J)
        assert_allclose(j_beta, J_BETA)
        assert_allclose(pointwise.j_act(j_beta, self.J), -BETA)

    def test_j_act_invariant_input(self):
        with self.assertRaises(InputNotAntiInvariant):
            pointwise.j_act(OMEGA, self.J)


class TestCompatiblePairs(unittest.TestCase):
    """
    Test fundamental forms, the twistor fiber and taming.
    """

    def test_fundamental_form(self):
        omega = pointwise.fundamental_form(np.eye(4), pointwise.standard_acs())
        assert_allclose(omega, OMEGA)
        self.assertAlmostEqual(pointwise.norm2(omega), 2.0)
        self.assertAlmostEqual(pointwise.pfaffian(omega), 1.0)

    def test_incompatible(self):
        with self.assertRaises(IncompatiblePair):
            pointwise.fundamental_form(np.diag([2., 1, 1, 1]),
                                       pointwise.standard_acs())

    def test_wrong_orientation(self):
        """A structure inducing the opposite orientation is rejected."""
        J = pointwise.standard_acs()
        J[2:, 2:] *= -1
        with self.assertRaises(IncompatiblePair):
            pointwise.fundamental_form(np.eye(4), J)

    def test_round_trip(self):
        """The structure raised from a fiber point has that point as form."""
        g, J, omega = _random_pair(6)
        assert_allclose(J @ J, -np.eye(4), atol=1e-12)
        assert_allclose(pointwise.fundamental_form(g, J), omega, atol=1e-12)
        assert_allclose(pointwise.metric_from_form(omega, J), g, atol=1e-10)

    def test_not_on_fiber(self):
        with self.assertRaises(NotOnTwistorFiber):
            pointwise.acs_from_form(np.eye(4), 2 * OMEGA)
        with self.assertRaises(NotOnTwistorFiber):
            # anti-self-dual
            pointwise.acs_from_form(np.eye(4), np.array([1., 0, 0, 0, 0, -1]))

    def test_tames(self):
        J = pointwise.standard_acs()
        self.assertAlmostEqual(float(pointwise.tames(OMEGA, J)), 1.0)
        self.assertAlmostEqual(float(pointwise.tames(OMEGA, -J)), -1.0)

    def test_average_metric(self):
        """Averaging keeps a compatible metric and makes any metric
        compatible."""
        g, J, _ = _random_pair(7)
        assert_allclose(pointwise.average_metric(g, J), g, atol=1e-12)
        g_J = pointwise.average_metric(np.diag([1., 2, 3, 4]), J)
        assert_allclose(J.T @ g_J @ J, g_J, atol=1e-12)


class TestSplitBasis(unittest.TestCase):
    """
    Test the adapted basis of the 2-forms.
    """

    def test_orthogonal(self):
        g, J, omega = _random_pair(8)
        basis = pointwise.split_basis(g, J)
        forms = [basis.omega] + list(basis.minus_basis) + \
            list(basis.asd_basis)
        gram = np.array([[pointwise.inner(a, b, g) for b in forms]
                         for a in forms])
        assert_allclose(gram, 2 * np.eye(6), atol=1e-10)
        assert_allclose(basis.omega, omega, atol=1e-12)
        for beta in basis.minus_basis:
            assert_allclose(pointwise.split_J(beta, J)[1], beta, atol=1e-10)
        for eta in basis.asd_basis:
            assert_allclose(pointwise.hodge_star(eta, g), -eta, atol=1e-10)

