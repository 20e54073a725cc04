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
Experiments described by an `ExperimentConfig`.

Every experiment returns a JSON-compatible record and, for scans and
sweeps, a table. `run` writes both to the output directory.
"""

import logging
from collections import namedtuple

import numpy as np

from . import lie
from .anti_invariant import (h_minus, path_scan, rank_test_h_minus,
                             tame_verdict, B2_TORUS, B_PLUS_TORUS)
from .calabi_yau import TypeDProblem, solve_type_D
from .families import bump_path, torus_family, h2_family, intersection_dim
from .fields import FormField, MetricField
from .hermitian import (lee_form, gauduchon_residual, gauduchon_gauge,
                        nijenhuis_field, well_balanced_residuals,
                        hermitian_weyl_residual, nabla_omega_residual)
from .exceptions import ConfigError
from .io import write_record, write_table, dump_field

__all__ = ['RunResult', 'run', 'execute']

_logger = logging.getLogger(__name__)

RunResult = namedtuple('RunResult', ['record', 'columns', 'rows', 'fields'])

PATH_COLUMNS = ['t', 'kernel_dim', 'gap_ratio']


def _eigen_kwargs(config):
    kwargs = config.section('eigen')
    kwargs.setdefault('random_state', config.seed)
    return kwargs


def _setup(config, chart):
    g = config.build_metric(chart)
    J = config.build_structure(chart, g)
    return g, J


def _run_hminus(config, chart):
    g, J = _setup(config, chart)
    report = h_minus(g, J, **_eigen_kwargs(config))
    rank = rank_test_h_minus(g, J).dim
    tensor, _ = nijenhuis_field(J)
    integrable = float(np.max(np.abs(tensor))) < 1e-8
    difference, verdict = tame_verdict(B_PLUS_TORUS, report.kernel_dim,
                                       heuristic=not integrable)
    record = {
        'kernel_dim': report.kernel_dim,
        'h_plus': B2_TORUS - report.kernel_dim,
        'b_plus': B_PLUS_TORUS,
        'rank_test': rank,
        'spectrum': report.to_dict(),
        'tame': {'difference': difference, 'verdict': verdict},
    }
    fields = {'structure': J, 'metric': g,
              'fundamental-form': J.fundamental_form(g)}
    return RunResult(record, None, None, fields)


def _run_path_scan(config, chart):
    path_spec = config.section('path')
    samples = path_spec.get('samples', [0.0, 0.25, 0.5, 0.75, 1.0])
    kwargs = {}
    if 'width' in path_spec:
        kwargs['width'] = path_spec['width']
    path = bump_path(chart, samples, amplitude=path_spec.get('amplitude', 0.5),
                     **kwargs)
    scan = path_scan(path, **_eigen_kwargs(config))
    rows = [[s.t, s.kernel_dim, s.gap_ratio] for s in scan]
    record = {
        'samples': [s._asdict() for s in scan],
        'flagged': [s.t for s in scan if s.flagged],
    }
    return RunResult(record, PATH_COLUMNS, rows, {})


def _run_family(config, chart):
    family = config.section('family')
    g = MetricField.flat(chart)
    kind = family['kind']
    if kind == 'fls':
        columns = ['f', 'l', 's', 'predicted', 'measured']
    else:
        columns = ['k1', 'k2', 'sign', 'predicted', 'measured']
    rows = []
    for instance in family['instances']:
        if kind == 'fls':
            params = [str(instance.get(key, 0)) for key in ('f', 'l', 's')]
            coefficients = config.coefficients(instance, chart)
        else:
            params = [instance.get('k1', 0.0), instance.get('k2', 0.0),
                      instance.get('sign', 1)]
            coefficients = h2_family(*params)
        J, predicted = torus_family(*coefficients, chart=chart)
        measured = h_minus(g, J, **_eigen_kwargs(config)).kernel_dim
        if measured != predicted:
            _logger.warning('family instance %s: predicted %d, measured %d',
                            params, predicted, measured)
        rows.append(params + [predicted, measured])
    record = {
        'instances': [dict(zip(columns, row)) for row in rows],
        'agree': all(row[-1] == row[-2] for row in rows),
    }
    return RunResult(record, columns, rows, {})


def _run_lie(config, chart):
    spec = config.section('lie')
    if 'preset' in spec:
        data = lie.preset(spec['preset'])
        model, J, g = data.model, data.J, data.g
    else:
        model = lie.load_model(spec['model_file'])
        J, g = lie.InvariantACS.standard(), np.eye(4)
    if 'structure' in spec:
        J = lie.InvariantACS(spec['structure'])
    if 'metric' in spec:
        g = np.asarray(spec['metric'], dtype=float)
    h_m, h_p, b_plus = lie.invariant_h_pm(model, J, g)
    b2, _ = lie.invariant_cohomology(model, 2)
    difference, verdict = lie.invariant_tame_indicator(model, J, g)
    _, image = lie.nijenhuis_invariant(model, J)
    residuals = lie.invariant_well_balanced(model, J, g)
    record = {
        'model': model.name,
        'differentials': lie.format_model(model),
        'h_minus': h_m,
        'h_plus': h_p,
        'b_plus': b_plus,
        'b2': b2,
        'tame': {'difference': difference, 'verdict': verdict},
        'nijenhuis_image': [list(v) for v in image],
        'lee_form': list(lie.invariant_lee_form(model, J, g)),
        'well_balanced': {'iii': residuals[0], 'iv': residuals[1],
                          'v': residuals[2]},
        'nabla_omega_residual': lie.invariant_nabla_omega_residual(model, J,
                                                                   g),
    }
    return RunResult(record, None, None, {})


def _run_hermitian(config, chart):
    g, J = _setup(config, chart)
    fields = {'structure': J, 'metric': g}
    if config.section('hermitian').get('gauduchon', False):
        u, g = gauduchon_gauge(g, J)
        fields['metric'] = g
        fields['volume'] = u
    theta = lee_form(g, J)
    _, rank = nijenhuis_field(J)
    res_iii, res_iv, res_v = well_balanced_residuals(g, J)
    record = {
        'lee_form_sup': theta.sup_norm(),
        'gauduchon_residual': gauduchon_residual(g, J),
        'nijenhuis_rank_max': int(rank.max()),
        'nijenhuis_rank_min': int(rank.min()),
        'well_balanced': {'iii': res_iii, 'iv': res_iv, 'v': res_v},
        'hermitian_weyl_residual': hermitian_weyl_residual(g, J),
        'nabla_omega_residual': nabla_omega_residual(g, J),
    }
    fields['fundamental-form'] = J.fundamental_form(g)
    return RunResult(record, None, None, fields)


def _run_cy_solve(config, chart):
    J = config.build_structure(chart, MetricField.flat(chart))
    F = config.volume_data(chart)
    problem = TypeDProblem.flat(chart, J=J, F=F)
    solution = solve_type_D(problem, **config.section('newton'))
    record = solution.to_dict()
    record['F_shift'] = problem.F_shift
    fields = {'structure': J, 'solution': solution.omega,
              'volume': FormField(chart, 0, problem.F)}
    return RunResult(record, None, None, fields)


def _run_intersection(config, chart):
    g = config.build_metric(chart)
    specs = config.values['structures']
    if len(specs) != 2:
        raise ConfigError(f'structures: need two entries, got {len(specs)}')
    J1, J2 = (config.build_structure(chart, g, spec) for spec in specs)
    dim = intersection_dim(J1, J2, g)
    return RunResult({'intersection_dim': dim, 'bound_holds': dim <= 1},
                     None, None, {})


_RUNNERS = {
    'hminus': _run_hminus,
    'path-scan': _run_path_scan,
    'family': _run_family,
    'lie': _run_lie,
    'hermitian': _run_hermitian,
    'cy-solve': _run_cy_solve,
    'intersection': _run_intersection,
}


def execute(config):
    """
    Run an experiment without writing files.

    Parameters
    ----------
    config : ExperimentConfig

    Returns
    -------
    result : RunResult
        ``fields`` maps dump targets to fields
    """
    chart = config.build_chart()
    _logger.info('running %s experiment %r at N = %d', config.kind,
                 config.name, chart.resolution)
    result = _RUNNERS[config.kind](config, chart)
    record = {'experiment': config.kind, 'name': config.name,
              'seed': config.seed, 'resolution': chart.resolution}
    record.update(result.record)
    return result._replace(record=record)


def run(config):
    """
    Run an experiment and write its results.

    Writes ``<name>.json``, ``<name>.csv`` for scans and sweeps, and the
    fields listed under ``output.dump`` to the output directory.

    Parameters
    ----------
    config : ExperimentConfig

    Returns
    -------
    result : RunResult
    paths : list of Path
        written files
    """
    result = execute(config)
    out = config.output_dir
    paths = [write_record(result.record, out / f'{config.name}.json')]
    if result.columns is not None:
        path = out / f'{config.name}.csv'
        write_table(result.rows, result.columns, path)
        paths.append(path)
    for target in config.values['output']['dump']:
        if target not in result.fields:
            _logger.warning('%s experiment has no %s field to dump',
                            config.kind, target)
            continue
        paths.extend(dump_field(result.fields[target],
                                out / f'{config.name}-{target}',
                                metadata={'experiment': config.kind}))
    return result, paths
