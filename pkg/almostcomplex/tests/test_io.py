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
Testing records, tables and field dumps

"""

import json
import tempfile
import unittest
from pathlib import Path

import numpy as np
import pandas as pd
from numpy.testing import assert_allclose

from almostcomplex import io
from almostcomplex.exceptions import DimensionMismatch
from almostcomplex.families import standard_beta
from almostcomplex.fields import GridChart, MetricField, ACSField
from almostcomplex.utils import random_metric


class TestRecords(unittest.TestCase):
    """
    Test the JSON run records.
    """

    def test_round_floats(self):
        record = {'a': np.float64(1 / 3), 'b': [np.int64(2), np.bool_(True)],
                  'c': np.array([0.1 + 0.2, np.inf]), 3: 'text'}
        out = io.round_floats(record, precision=6)
        self.assertEqual(out, {'a': 0.333333, 'b': [2, True],
                               'c': [0.3, None], '3': 'text'})
        self.assertIsInstance(out['b'][0], int)

    def test_deterministic(self):
        """Key order and float noise do not change the text."""
        first = io.to_json({'z': 1.0, 'a': 0.1 + 0.2})
        second = io.to_json({'a': 0.3, 'z': 1.0})
        self.assertEqual(first, second)
        self.assertLess(first.index('"a"'), first.index('"z"'))

    def test_write_read(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = io.write_record({'h_minus': 2, 'gap': 1e6},
                                   Path(tmp) / 'nested' / 'run.json')
            self.assertEqual(io.read_record(path),
                             {'h_minus': 2, 'gap': 1e6})

    def test_table(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'scan.csv'
            table = io.write_table([[0.0, 2, 1e4], [1.0, 0, None]],
                                   ['t', 'kernel_dim', 'gap_ratio'], path)
            self.assertEqual(list(table.columns),
                             ['t', 'kernel_dim', 'gap_ratio'])
            back = pd.read_csv(path)
            assert_allclose(back['kernel_dim'], [2, 0])
            self.assertTrue(np.isnan(back['gap_ratio'][1]))


class TestFieldDump(unittest.TestCase):
    """
    Test raw field dumps with JSON sidecars.
    """

    def setUp(self):
        self.chart = GridChart(4, periods=[1.0, 2.0, 1.0, 1.0])

    def test_fields(self):
        _, beta, _ = standard_beta(self.chart)
        fields = [beta, random_metric(self.chart, random_state=0),
                  ACSField.standard(self.chart)]
        with tempfile.TemporaryDirectory() as tmp:
            for n, field in enumerate(fields):
                binary, sidecar = io.dump_field(field, Path(tmp) / f'f{n}',
                                                metadata={'n': n})
                self.assertEqual(binary.stat().st_size,
                                 8 * np.prod(json.loads(
                                     sidecar.read_text())['shape']))
                loaded, metadata = io.load_field(binary)
                self.assertIs(type(loaded), type(field))
                self.assertEqual(loaded.chart, self.chart)
                self.assertEqual(metadata, {'n': n})
        assert_allclose(loaded.values, fields[-1].values)

    def test_form_values(self):
        _, beta, _ = standard_beta(self.chart)
        with tempfile.TemporaryDirectory() as tmp:
            io.dump_field(beta, Path(tmp) / 'beta')
            loaded, _ = io.load_field(Path(tmp) / 'beta.json')
        self.assertEqual(loaded.degree, 2)
        assert_allclose(loaded.components, beta.components)

    def test_truncated(self):
        g = MetricField.flat(self.chart)
        with tempfile.TemporaryDirectory() as tmp:
            binary, _ = io.dump_field(g, Path(tmp) / 'g')
            binary.write_bytes(binary.read_bytes()[:-8])
            with self.assertRaises(DimensionMismatch):
                io.load_field(binary)

    def test_type(self):
        with self.assertRaises(TypeError):
            io.dump_field(np.zeros(3), 'never')
