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
Experiment files of the command line runner.

An experiment file is a JSON object. ``experiment`` names the computation,
the remaining sections describe the grid, the metric, the structures and
the solver settings::

    {
        "experiment": "hminus",
        "seed": 0,
        "grid": {"resolution": 8},
        "structure": {"kind": "alpha", "alpha": "beta",
                      "r": "0.5 * sin(2 * pi * x1)"},
        "eigen": {"kernel_threshold": 1e-6},
        "output": {"directory": "results", "name": "flat"}
    }

Every key is checked against `SCHEMA`; unknown keys raise `ConfigError`
with the path of the key. Scalar fields are written in the grammar of
:mod:`almostcomplex.expression`.
"""

import copy
import json
import logging
from pathlib import Path

from .exceptions import ConfigError
from .expression import parse_expression, evaluate_field
from .families import (
    build_from_alpha, lee_structure, conformal_structure, twisted_from_alpha,
    torus_family, h2_family, two_bump_structure, standard_beta,
)
from .fields import GridChart, MetricField, ACSField
from .utils import random_structure

__all__ = ['EXPERIMENTS', 'STRUCTURE_KINDS', 'SCHEMA', 'ExperimentConfig',
           'load_config']

_logger = logging.getLogger(__name__)

EXPRESSION = 'expression'

# experiment kind -> required sections
EXPERIMENTS = {
    'hminus': (),
    'path-scan': ('path',),
    'family': ('family',),
    'lie': ('lie',),
    'hermitian': (),
    'cy-solve': (),
    'intersection': ('structures',),
}
STRUCTURE_KINDS = ('standard', 'alpha', 'lee', 'conformal', 'twisted', 'fls',
                   'h2', 'two-bump', 'random')
FAMILY_KINDS = ('fls', 'h2')
DUMP_TARGETS = ('structure', 'metric', 'fundamental-form', 'volume',
                'solution')

_STRUCTURE = {
    'kind': str,
    'alpha': str,
    'r': EXPRESSION,
    'sign': int,
    'f': EXPRESSION,
    'l': EXPRESSION,
    's': EXPRESSION,
    'k1': float,
    'k2': float,
    'amplitude': float,
    'width': float,
    'max_mode': int,
}

SCHEMA = {
    'experiment': str,
    'seed': int,
    'grid': {'resolution': int, 'periods': [float]},
    'metric': {'conformal': EXPRESSION},
    'structure': _STRUCTURE,
    'structures': [_STRUCTURE],
    'path': {'samples': [float], 'amplitude': float, 'width': float},
    'family': {
        'kind': str,
        'instances': [{'f': EXPRESSION, 'l': EXPRESSION, 's': EXPRESSION,
                       'k1': float, 'k2': float, 'sign': int}],
    },
    'lie': {'preset': str, 'model_file': str, 'structure': [[float]],
            'metric': [[float]]},
    'volume': {'F': EXPRESSION},
    'eigen': {'n_eigenvalues': int, 'block_size': int, 'max_blocks': int,
              'min_blocks': int, 'kernel_threshold': float,
              'gap_band': float, 'residual_tol': float,
              'n_converged': int},
    'newton': {'tol': float, 'max_iter': int, 'krylov_tol': float,
               'cg_tol': float, 'max_halvings': int},
    'hermitian': {'gauduchon': bool},
    'output': {'directory': str, 'name': str, 'dump': [str]},
}

DEFAULTS = {
    'seed': 0,
    'grid': {'resolution': 8, 'periods': [1.0, 1.0, 1.0, 1.0]},
    'structure': {'kind': 'standard'},
    'output': {'directory': 'results', 'dump': []},
}


def _check_value(value, schema, path):
    if isinstance(schema, dict):
        if not isinstance(value, dict):
            raise ConfigError(f'{path}: expected an object')
        for key, item in value.items():
            child = f'{path}.{key}' if path else key
            if key not in schema:
                raise ConfigError(f'{child}: unknown key')
            _check_value(item, schema[key], child)
    elif isinstance(schema, list):
        if not isinstance(value, list):
            raise ConfigError(f'{path}: expected a list')
        for i, item in enumerate(value):
            _check_value(item, schema[0], f'{path}[{i}]')
    elif schema == EXPRESSION:
        try:
            parse_expression(value)
        except ConfigError as err:
            raise ConfigError(f'{path}: {err}') from None
    elif schema is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f'{path}: expected a number, got {value!r}')
    elif schema is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f'{path}: expected an integer, got {value!r}')
    elif not isinstance(value, schema):
        raise ConfigError(f'{path}: expected {schema.__name__}, got '
                          f'{value!r}')


def _check_choice(value, choices, path):
    if value not in choices:
        raise ConfigError(f'{path}: {value!r} is not one of '
                          f'{", ".join(map(str, choices))}')


def _merge(defaults, values):
    out = copy.deepcopy(defaults)
    for key, value in values.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


class ExperimentConfig:
    """
    Validated experiment description.

    Parameters
    ----------
    values : dict
        decoded experiment file
    source : {None, str}
        file name for messages

    Attributes
    ----------
    kind : str
        experiment kind, a key of `EXPERIMENTS`
    values : dict
        settings merged with `DEFAULTS`

    Raises
    ------
    ConfigError
        naming the offending key
    """

    def __init__(self, values, source=None):
        self.source = source
        _check_value(values, SCHEMA, '')
        if 'experiment' not in values:
            raise ConfigError('experiment: missing key')
        self.kind = values['experiment']
        _check_choice(self.kind, EXPERIMENTS, 'experiment')
        for section in EXPERIMENTS[self.kind]:
            if section not in values:
                raise ConfigError(f'{section}: required for experiment '
                                  f'{self.kind!r}')
        self.values = _merge(DEFAULTS, values)
        self._check_semantics()

    def _check_semantics(self):
        v = self.values
        resolution = v['grid']['resolution']
        if resolution < 4 or resolution % 2:
            raise ConfigError(f'grid.resolution: must be even and >= 4, got '
                              f'{resolution}')
        if len(v['grid']['periods']) != 4:
            raise ConfigError('grid.periods: need four periods')
        specs = [('structure', v['structure'])]
        specs += [(f'structures[{i}]', s)
                  for i, s in enumerate(v.get('structures', []))]
        for path, spec in specs:
            _check_choice(spec.get('kind', 'standard'), STRUCTURE_KINDS,
                          f'{path}.kind')
            if 'alpha' in spec:
                _check_choice(spec['alpha'], ('beta', 'j_beta'),
                              f'{path}.alpha')
            if 'sign' in spec:
                _check_choice(spec['sign'], (1, -1), f'{path}.sign')
        if 'family' in v:
            _check_choice(v['family'].get('kind'), FAMILY_KINDS,
                          'family.kind')
            if not v['family'].get('instances'):
                raise ConfigError('family.instances: at least one instance')
        if 'lie' in v and ('preset' in v['lie']) == ('model_file' in v['lie']):
            raise ConfigError('lie: give exactly one of preset, model_file')
        for i, target in enumerate(v['output']['dump']):
            _check_choice(target, DUMP_TARGETS, f'output.dump[{i}]')

    @classmethod
    def from_file(cls, path):
        """Read and validate a JSON experiment file."""
        path = Path(path)
        try:
            with open(path) as handle:
                values = json.load(handle)
        except json.JSONDecodeError as err:
            raise ConfigError(f'{path}: invalid JSON ({err})') from None
        _logger.debug('read experiment file %s', path)
        return cls(values, source=str(path))

    def override(self, seed=None, resolution=None, out_dir=None):
        """Copy with command line overrides applied."""
        values = copy.deepcopy(self.values)
        if seed is not None:
            values['seed'] = int(seed)
        if resolution is not None:
            values['grid']['resolution'] = int(resolution)
        if out_dir is not None:
            values['output']['directory'] = str(out_dir)
        return ExperimentConfig(values, self.source)

    @property
    def seed(self):
        return self.values['seed']

    @property
    def name(self):
        return self.values['output'].get('name', self.kind)

    @property
    def output_dir(self):
        return Path(self.values['output']['directory'])

    def section(self, key):
        """Settings of a section, empty if absent."""
        return dict(self.values.get(key, {}))

    def build_chart(self):
        grid = self.values['grid']
        return GridChart(grid['resolution'], grid['periods'])

    def build_metric(self, chart):
        """Flat metric or its conformal rescaling by ``metric.conformal``."""
        metric = self.values.get('metric', {})
        if 'conformal' not in metric:
            return MetricField.flat(chart)
        return MetricField.conformal(chart,
                                     evaluate_field(metric['conformal'], chart))

    def build_structure(self, chart, g, spec=None):
        """
        Almost complex structure compatible with ``g``.

        Parameters
        ----------
        chart : GridChart
        g : MetricField
            conformally flat metric, so that the standard structure is
            compatible with it
        spec : {None, dict}
            structure section, ``structure`` if None

        Returns
        -------
        J : ACSField
        """
        spec = self.values['structure'] if spec is None else spec
        kind = spec.get('kind', 'standard')
        sign = spec.get('sign', 1)
        J_std = ACSField.standard(chart)
        if kind == 'standard':
            return J_std if sign == 1 else -J_std
        omega = J_std.fundamental_form(g)
        _, beta, j_beta = standard_beta(chart)
        alpha = j_beta if spec.get('alpha') == 'j_beta' else beta
        if kind in ('fls', 'h2') and not g.is_identity:
            raise ConfigError(f'structure.kind: {kind!r} needs the flat '
                              f'metric')
        if kind == 'alpha':
            return build_from_alpha(g, omega, alpha,
                                    evaluate_field(spec.get('r', 0), chart),
                                    sign)
        if kind == 'lee':
            return lee_structure(g, omega, alpha, sign)
        if kind == 'conformal':
            return conformal_structure(g, omega, alpha, sign)
        if kind == 'twisted':
            return twisted_from_alpha(g, omega, alpha,
                                      evaluate_field(spec.get('r', 0), chart),
                                      sign)
        if kind == 'fls':
            J, _ = torus_family(*self.coefficients(spec, chart), chart=chart)
            return J
        if kind == 'h2':
            J, _ = torus_family(*h2_family(spec.get('k1', 0.0),
                                           spec.get('k2', 0.0), sign),
                                chart=chart)
            return J
        if kind == 'two-bump':
            return two_bump_structure(g, omega, beta,
                                      amplitude=spec.get('amplitude', 0.5),
                                      width=spec.get('width', 0.2))
        return random_structure(g, max_mode=spec.get('max_mode', 1),
                                amplitude=spec.get('amplitude', 0.3),
                                random_state=self.seed)

    @staticmethod
    def coefficients(spec, chart):
        """Grid values of the ``f``, ``l`` and ``s`` entries of a spec."""
        return tuple(evaluate_field(spec.get(key, 0), chart)
                     for key in ('f', 'l', 's'))

    def volume_data(self, chart):
        volume = self.values.get('volume', {})
        return evaluate_field(volume.get('F', 0), chart)

    def to_dict(self):
        return copy.deepcopy(self.values)

    def __repr__(self):
        return f'ExperimentConfig(kind={self.kind!r}, source={self.source!r})'


def load_config(path):
    """Read and validate an experiment file, see `ExperimentConfig`."""
    return ExperimentConfig.from_file(path)
