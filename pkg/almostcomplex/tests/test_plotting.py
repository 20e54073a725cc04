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

import unittest

import matplotlib
import matplotlib.pyplot
import numpy as np

import almostcomplex as ac
from almostcomplex.anti_invariant import PathSample, SpectralReport
from almostcomplex.families import standard_beta
from almostcomplex.fields import GridChart


class TestPlotSpectrum(unittest.TestCase):
    r"""
    Test the `plot_spectrum` function.
    """

    def test_return_arguments(self):
        report = SpectralReport([0.0, 1e-12, 2.0, 3.5, 7.0], 2, 1e12, 1e-8,
                                8)
        lines = ac.plot_spectrum(report)
        self.assertTrue(type(lines) == list)
        self.assertEqual(len(lines), 6)
        for line in lines:
            self.assertTrue(type(line) == matplotlib.lines.Line2D)
        self.assertEqual(matplotlib.pyplot.gca().get_yscale(), 'log')

    def tearDown(self):
        """
        Clean plots etc
        """
        matplotlib.pyplot.close()


class TestPlotPathScan(unittest.TestCase):
    r"""
    Test the `plot_path_scan` function.
    """

    def test_return_arguments(self):
        samples = [PathSample(0.0, 2, 1e9, False),
                   PathSample(0.5, None, None, True),
                   PathSample(1.0, 0, 1e9, False)]
        lines = ac.plot_path_scan(samples)
        self.assertEqual(len(lines), 2)
        self.assertEqual(len(lines[1].get_xdata()), 1)

    def tearDown(self):
        matplotlib.pyplot.close()


class TestPlotResidualHistory(unittest.TestCase):
    r"""
    Test the `plot_residual_history` function.
    """

    def test_return_arguments(self):
        histories = [[1.0, 1e-3, 1e-9], [0.5, 1e-4, 1e-8, 1e-12]]
        lines = ac.plot_residual_history(*histories, labels=['a', 'b'])
        self.assertEqual(len(lines), 2)
        self.assertEqual(len(lines[1].get_xdata()), 4)
        self.assertEqual(matplotlib.pyplot.gca().get_yscale(), 'log')

    def tearDown(self):
        matplotlib.pyplot.close()


class TestPlotFormSlice(unittest.TestCase):
    r"""
    Test the `plot_form_slice` function.
    """

    def test_return_arguments(self):
        omega, _, _ = standard_beta(GridChart(8))
        image = ac.plot_form_slice(omega, component=5, axes=(2, 3))
        self.assertEqual(image.get_array().shape, (8, 8))
        np.testing.assert_allclose(image.get_array(), 1.0)

    def tearDown(self):
        matplotlib.pyplot.close()


if __name__ == '__main__':
    unittest.main()
