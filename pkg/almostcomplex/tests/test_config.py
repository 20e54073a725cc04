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
Testing the experiment files

"""

import json
import tempfile
import unittest
from pathlib import Path

import numpy as np
from numpy.testing import assert_allclose

from almostcomplex.config import ExperimentConfig, load_config
from almostcomplex.exceptions import ConfigError
from almostcomplex.fields import ACSField


class TestValidation(unittest.TestCase):
    """
    Test the schema and semantic checks.
    """

    def assertRejected(self, values, fragment):
        with self.assertRaises(ConfigError) as context:
            ExperimentConfig(values)
        self.assertIn(fragment, str(context.exception))

    def test_defaults(self):
        config = ExperimentConfig({'experiment': 'hminus'})
        self.assertEqual(config.kind, 'hminus')
        self.assertEqual(config.seed, 0)
        self.assertEqual(config.name, 'hminus')
        self.assertEqual(config.build_chart().resolution, 8)
        self.assertEqual(config.section('eigen'), {})

    def test_unknown_key(self):
        """Unknown keys are reported with their path."""
        self.assertRejected({'experiment': 'hminus',
                             'eigen': {'kernel_treshold': 1e-6}},
                            'eigen.kernel_treshold')
        self.assertRejected({'experiment': 'hminus', 'colour': 'red'},
                            'colour')

    def test_types(self):
        self.assertRejected({'experiment': 'hminus', 'seed': 1.5}, 'seed')
        self.assertRejected({'experiment': 'hminus',
                             'grid': {'resolution': True}},
                            'grid.resolution')
        self.assertRejected({'experiment': 'hminus',
                             'structure': {'kind': 'alpha', 'r': 'x1 +'}},
                            'structure.r')

    def test_required(self):
        self.assertRejected({}, 'experiment')
        self.assertRejected({'experiment': 'fourier'}, 'experiment')
        self.assertRejected({'experiment': 'path-scan'}, 'path')
        self.assertRejected({'experiment': 'intersection'}, 'structures')

    def test_semantics(self):
        self.assertRejected({'experiment': 'hminus',
                             'grid': {'resolution': 7}}, 'grid.resolution')
        self.assertRejected({'experiment': 'hminus',
                             'structure': {'kind': 'spiral'}},
                            'structure.kind')
        self.assertRejected({'experiment': 'hminus',
                             'structure': {'kind': 'lee', 'sign': 2}},
                            'structure.sign')
        self.assertRejected({'experiment': 'family',
                             'family': {'kind': 'fls', 'instances': []}},
                            'family.instances')
        self.assertRejected({'experiment': 'lie', 'lie': {}}, 'lie')
        self.assertRejected({'experiment': 'hminus',
                             'output': {'dump': ['spectrum']}},
                            'output.dump[0]')

    def test_override(self):
        config = ExperimentConfig({'experiment': 'hminus', 'seed': 3})
        changed = config.override(seed=5, resolution=12, out_dir='elsewhere')
        self.assertEqual(changed.seed, 5)
        self.assertEqual(changed.build_chart().resolution, 12)
        self.assertEqual(changed.output_dir, Path('elsewhere'))
        self.assertEqual(config.seed, 3)
        with self.assertRaises(ConfigError):
            config.override(resolution=5)

    def test_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'experiment.json'
            path.write_text(json.dumps({'experiment': 'lie',
                                        'lie': {'preset': 'kodaira'},
                                        'output': {'name': 'kt'}}))
            config = load_config(path)
            self.assertEqual(config.name, 'kt')
            self.assertEqual(config.source, str(path))
            path.write_text('{"experiment": ')
            with self.assertRaises(ConfigError):
                load_config(path)


class TestBuildStructure(unittest.TestCase):
    """
    Test the structures described by experiment files.
    """

    def build(self, spec, metric=None):
        values = {'experiment': 'hminus', 'structure': spec}
        if metric is not None:
            values['metric'] = metric
        config = ExperimentConfig(values)
        chart = config.build_chart()
        g = config.build_metric(chart)
        return chart, g, config.build_structure(chart, g)

    def test_standard(self):
        chart, _, J = self.build({'kind': 'standard', 'sign': -1})
        assert_allclose(J.values, -ACSField.standard(chart).values)

    def test_kinds(self):
        """Every kind gives a structure compatible with its metric."""
        specs = [
            {'kind': 'alpha', 'r': '0.5 * sin(2 * pi * x1)'},
            {'kind': 'lee', 'alpha': 'j_beta'},
            {'kind': 'conformal', 'sign': -1},
            {'kind': 'twisted', 'r': '0.3 * cos(2 * pi * x2)'},
            {'kind': 'fls', 'f': 'cos(2 * pi * x1)',
             'l': 'sin(2 * pi * x1)'},
            {'kind': 'h2', 'k1': 0.3, 'k2': -0.7},
            {'kind': 'two-bump', 'amplitude': 0.4},
            {'kind': 'random'},
        ]
        for spec in specs:
            with self.subTest(kind=spec['kind']):
                _, g, J = self.build(spec)
                pulled = np.swapaxes(J.values, -1, -2) @ g.values @ J.values
                assert_allclose(pulled, g.values, atol=1e-10)

    def test_conformal_metric(self):
        _, g, J = self.build({'kind': 'alpha', 'r': 0.5},
                             metric={'conformal': '0.1 * cos(2 * pi * x3)'})
        self.assertFalse(g.is_identity)
        pulled = np.swapaxes(J.values, -1, -2) @ g.values @ J.values
        assert_allclose(pulled, g.values, atol=1e-10)
        with self.assertRaises(ConfigError):
            self.build({'kind': 'h2'}, metric={'conformal': '0.1 * x1'})
