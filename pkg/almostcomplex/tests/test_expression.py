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
Testing the expression grammar

"""

import unittest

import numpy as np
from numpy.testing import assert_allclose

from almostcomplex.exceptions import ConfigError
from almostcomplex.expression import (Expression, parse_expression,
                                      evaluate_field)
from almostcomplex.fields import GridChart


class TestExpression(unittest.TestCase):
    """
    Test parsing and evaluation of scalar expressions.
    """

    def test_evaluate(self):
        expr = Expression('0.1 * (cos(2 * pi * x1) - 1) + x2 ** 2')
        self.assertEqual(expr.variables, frozenset({'x1', 'x2'}))
        self.assertAlmostEqual(expr.evaluate(x1=0.5, x2=2.0), 3.8)
        self.assertFalse(expr.is_constant)

    def test_grid(self):
        chart = GridChart(4)
        values = evaluate_field('sin(2 * pi * x3)', chart)
        self.assertEqual(values.shape, chart.shape)
        assert_allclose(values, np.sin(2 * np.pi * chart.coordinates()[2]))
        constant = evaluate_field(-1.5, chart)
        assert_allclose(constant, -1.5)

    def test_numbers(self):
        self.assertTrue(parse_expression(2).is_constant)
        self.assertAlmostEqual(parse_expression(0.25).evaluate(), 0.25)
        with self.assertRaises(ConfigError):
            parse_expression(True)

    def test_rejected(self):
        """Anything outside the arithmetic grammar is refused."""
        for text in ('__import__("os")', 'x5 + 1', 'sin(x1, x2)',
                     'x1 if x2 else x3', 'x1 // 2', '"a"', 'cos(',
                     'abs(x1)', 'np.sin(x1)', '[x1]'):
            with self.subTest(text=text):
                with self.assertRaises(ConfigError):
                    Expression(text)
        with self.assertRaises(ConfigError):
            Expression(1.0)

    def test_missing(self):
        with self.assertRaises(ConfigError):
            Expression('x1 + x4').evaluate(x1=0.0)

    def test_not_finite(self):
        with self.assertRaises(ConfigError):
            evaluate_field('log(x1)', GridChart(4))
