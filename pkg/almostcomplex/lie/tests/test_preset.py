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
Testing lie presets and model files

"""

import os
import tempfile
import unittest

from numpy.testing import assert_allclose

from almostcomplex import lie
from almostcomplex.exceptions import (
    ConfigError, JacobiViolation, UnknownPreset,
)


class TestPreset(unittest.TestCase):
    """
    Test the named models.
    """

    def test_fundamental_form(self):
        for name in lie.PRESETS:
            data = lie.preset(name)
            assert_allclose(data.omega.numeric(), [1, 0, 0, 0, 0, 1])
            assert_allclose(data.J.values @ data.J.values, -data.g)

    def test_kodaira_beta_closed(self):
        model = lie.preset('kodaira').model
        beta = lie.InvariantForm(2, [0, 1, 0, 0, -1, 0])
        j_beta = lie.InvariantForm(2, [0, 0, 1, 1, 0, 0])
        self.assertTrue(lie.ce_d(model, beta).is_zero())
        self.assertTrue(lie.ce_d(model, j_beta).is_zero())

    def test_unknown(self):
        with self.assertRaises(UnknownPreset):
            lie.preset('heisenberg')
        with self.assertRaises(KeyError):
            lie.preset('heisenberg')


class TestModelFile(unittest.TestCase):
    """
    Test parsing and formatting of structure equations.
    """

    def test_parse(self):
        text = ('# three-step model\n'
                'de3 = e14\n'
                'de4 = e12   # top\n')
        model = lie.parse_model(text)
        self.assertEqual(model.d1, lie.preset('three-step').model.d1)

    def test_rational_coefficients(self):
        model = lie.parse_model('de4 = 1/2 e12 - 3*e13\nde1 = 0\n')
        expected = lie.LieAlgebraModel({4: {(1, 2): '1/2', (1, 3): -3}})
        self.assertEqual(model.d1, expected.d1)

    def test_format_roundtrip(self):
        model = lie.parse_model('de4 = -1/2 e12\n')
        self.assertEqual(lie.format_model(model), 'de4 = -1/2 e12\n')
        again = lie.parse_model(lie.format_model(model))
        self.assertEqual(again.d1, model.d1)

    def test_bad_lines(self):
        for text in ('d4 = e12', 'de4 = e12 e13', 'de5 = e12',
                     'de4 = e12\nde4 = e13', 'de4 = x'):
            with self.subTest(text=text):
                with self.assertRaises(ConfigError):
                    lie.parse_model(text)

    def test_jacobi(self):
        with self.assertRaises(JacobiViolation):
            lie.parse_model('de4 = e12\nde2 = e34\n')

    def test_load(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'kodaira.txt')
            with open(path, 'w') as handle:
                handle.write(lie.format_model(lie.preset('kodaira').model))
            model = lie.load_model(path)
        self.assertEqual(model.d1, lie.preset('kodaira').model.d1)
