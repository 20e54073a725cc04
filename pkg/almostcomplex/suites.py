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
Acceptance bundles run by ``almostcomplex reproduce``.

Each suite returns `Check` rows; a suite passes when all its rows pass.
"""

import logging
import time
from collections import namedtuple

import numpy as np

from . import lie, pointwise
from .anti_invariant import (h_minus, path_scan, rank_test_h_minus,
                             lejmi_P, lejmi_P_laplacian, max_structures_bound,
                             B2_TORUS)
from .calabi_yau import TypeDProblem, solve_type_D, semicontinuity_experiment
from .calculus import betti_numbers, ext_d, star, l2_inner, l2_norm
from .exceptions import AlmostComplexError, ConfigError
from .families import (standard_beta, lee_structure, build_from_alpha,
                       torus_family, h2_family, bump_path, intersection_dim)
from .fields import GridChart, FormField, MetricField, ACSField
from .hermitian import curvature, levi_civita, weitzenbock_residual, \
    signature_constraint
from .utils import (random_form, random_admissible_triple, random_metric,
                    random_structure)

__all__ = ['Check', 'SUITES', 'run_suite', 'run_suites']

_logger = logging.getLogger(__name__)

Check = namedtuple('Check', ['suite', 'check', 'passed', 'detail'])


class _Checks:
    """Collects the rows of one suite."""

    def __init__(self, suite):
        self.suite = suite
        self.rows = []

    def add(self, check, passed, detail=''):
        passed = bool(passed)
        self.rows.append(Check(self.suite, check, passed, str(detail)))
        level = logging.INFO if passed else logging.WARNING
        _logger.log(level, '%s / %s: %s %s', self.suite, check,
                    'pass' if passed else 'FAIL', detail)

    def equal(self, check, measured, expected):
        self.add(check, measured == expected,
                 f'measured {measured}, expected {expected}')

    def below(self, check, measured, bound):
        self.add(check, measured < bound, f'{measured:.3e} < {bound:.0e}')


def _flat(resolution):
    chart = GridChart(resolution)
    return chart, MetricField.flat(chart)


def _designed_triples(chart):
    """Coefficient triples with span ranks 1, 1, 2, 2, 3."""
    x1, x2, _, _ = chart.coordinates()
    a = 0.5 + 0.3 * np.sin(2 * np.pi * x1)
    b = 2 * np.pi * x2
    return [
        ('constant', (1.0, 0.0, 0.0)),
        ('h2-constant', h2_family(0.5, 0.5)),
        ('circle-f-l', (np.cos(2 * np.pi * x1), np.sin(2 * np.pi * x1),
                        0.0)),
        ('circle-l-s', (0.0, np.cos(2 * np.pi * x2),
                        np.sin(2 * np.pi * x2))),
        ('sphere', (np.cos(a), np.sin(a) * np.cos(b), np.sin(a) * np.sin(b))),
    ]


def _family_instances(chart, seed):
    instances = _designed_triples(chart)
    for k in range(2):
        instances.append((f'random-{k}', random_admissible_triple(
            chart, random_state=seed + k)))
    return instances


def flat_torus(seed=0):
    """Betti numbers and h- of the standard structure on the flat torus."""
    checks = _Checks('flat-torus')
    chart, g = _flat(8)
    start = time.perf_counter()
    report = h_minus(g, ACSField.standard(chart), random_state=seed)
    elapsed = time.perf_counter() - start
    betti = betti_numbers(g)
    checks.equal('h_minus', report.kernel_dim, 2)
    checks.equal('h_plus', B2_TORUS - report.kernel_dim, 4)
    checks.equal('b_plus', betti['b_plus'], 3)
    checks.equal('b2', betti['b2'], 6)
    checks.add('gap ratio', report.gap_ratio >= 1e3,
               f'{report.gap_ratio:.3e}')
    checks.below('runtime [s]', elapsed, 30)
    return checks.rows


def torus_families(seed=0):
    """Measured h- of torus families against the span-rank formula."""
    checks = _Checks('torus-families')
    measured = {}
    for resolution in (8, 12):
        chart, g = _flat(resolution)
        for name, (f, l, s) in _family_instances(chart, seed):
            start = time.perf_counter()
            J, predicted = torus_family(f, l, s, chart=chart)
            value = h_minus(g, J, random_state=seed).kernel_dim
            elapsed = time.perf_counter() - start
            measured.setdefault(name, []).append(value)
            checks.equal(f'{name} N={resolution}', value, predicted)
            checks.below(f'{name} N={resolution} runtime [s]', elapsed, 120)
    for name, values in measured.items():
        checks.add(f'{name} resolutions agree', len(set(values)) == 1,
                   values)
    return checks.rows


def lee_structure_suite(seed=0):
    """Lee and non-constant twistor deformations of the standard structure."""
    checks = _Checks('lee-structure')
    chart, g = _flat(8)
    omega, beta, _ = standard_beta(chart)
    J_std = ACSField.standard(chart)
    J_lee = lee_structure(g, omega, beta)
    checks.equal('lee h_minus', h_minus(g, J_lee, random_state=seed)
                 .kernel_dim, 2)
    checks.equal('lee intersection with standard',
                 intersection_dim(J_std, J_lee, g), 1)
    x1 = chart.coordinates()[0]
    J_r = build_from_alpha(g, omega, beta, 0.5 * np.sin(2 * np.pi * x1))
    checks.equal('non-constant r h_minus',
                 h_minus(g, J_r, random_state=seed).kernel_dim, 1)
    checks.equal('non-constant r intersection with standard',
                 intersection_dim(J_std, J_r, g), 1)
    values, holds = max_structures_bound(g, [J_std, J_lee, J_r])
    checks.add('structure bound', holds and values == [2, 2, 1], str(values))
    return checks.rows


def h2_family_suite(seed=0):
    """The constant family with h- = 2."""
    checks = _Checks('h2-family')
    chart, g = _flat(8)
    for k1, k2 in ((1.0, 0.0), (0.3, -0.7)):
        J, predicted = torus_family(*h2_family(k1, k2), chart=chart)
        checks.equal(f'k = ({k1}, {k2}) predicted', predicted, 2)
        checks.equal(f'k = ({k1}, {k2}) measured',
                     h_minus(g, J, random_state=seed).kernel_dim, 2)
    return checks.rows


def bump_path_suite(seed=0):
    """h- along the two-bump path from the standard structure."""
    checks = _Checks('bump-path')
    chart = GridChart(8)
    samples = path_scan(bump_path(chart, [0.0, 0.25, 0.5, 0.75, 1.0]),
                        random_state=seed)
    checks.equal('t = 0', samples[0].kernel_dim, 2)
    for sample in samples[1:]:
        checks.equal(f't = {sample.t}', sample.kernel_dim, 0)
    dims = [s.kernel_dim for s in samples[1:]]
    checks.add('no upward jump away from t = 0',
               all(b <= a for a, b in zip(dims, dims[1:])), dims)
    return checks.rows


def lie_models(seed=0):
    """Exact values on the Kodaira and three-step models."""
    checks = _Checks('lie-models')
    kodaira = lie.preset('kodaira')
    h_m, h_p, b_plus = lie.invariant_h_pm(kodaira.model, kodaira.J,
                                          kodaira.g)
    checks.equal('kodaira h_minus', h_m, 2)
    checks.equal('kodaira b_plus', b_plus, 2)
    difference, _ = lie.invariant_tame_indicator(kodaira.model, kodaira.J,
                                                 kodaira.g)
    checks.equal('kodaira tame indicator', difference, 0)
    checks.equal('kodaira b1', lie.invariant_cohomology(kodaira.model, 1)[0],
                 3)

    model = lie.preset('three-step')
    h_m, h_p, b_plus = lie.invariant_h_pm(model.model, model.J, model.g)
    checks.equal('three-step b_plus', b_plus, 1)
    checks.equal('three-step h_minus', h_m, 1)
    checks.equal('three-step b2', lie.invariant_cohomology(model.model, 2)[0],
                 2)
    _, image = lie.nijenhuis_invariant(model.model, model.J)
    in_plane = all(abs(v[0]) < 1e-12 and abs(v[1]) < 1e-12 for v in image)
    checks.add('three-step image of N', len(image) == 2 and in_plane,
               [list(v) for v in image])
    theta = lie.invariant_lee_form(model.model, model.J, model.g)
    checks.add('three-step Lee form', np.allclose(theta, [0, 0, -1, 0],
                                                  atol=1e-12), list(theta))
    residuals = lie.invariant_well_balanced(model.model, model.J, model.g)
    checks.below('three-step well-balanced', max(residuals), 1e-12)
    # nilmanifolds have Euler characteristic and signature zero
    checks.add('signature constraint', signature_constraint(0, 0), '5*0+6*0')
    return checks.rows


def intersection_bound(seed=0):
    """intersection_dim <= 1 for random pairs compatible with one metric."""
    checks = _Checks('intersection-bound')
    chart = GridChart(8)
    for k in range(10):
        g = random_metric(chart, random_state=seed + k)
        J1 = random_structure(g, random_state=seed + 100 + k)
        J2 = random_structure(g, random_state=seed + 200 + k)
        dim = intersection_dim(J1, J2, g)
        checks.add(f'pair {k}', dim <= 1, f'dim {dim}')
    return checks.rows


def _anti(form, J):
    _, anti = pointwise.split_J(form.pointwise(), J.values)
    return FormField.from_pointwise(form.chart, anti)


def _oracle_instances(chart, seed):
    g = MetricField.flat(chart)
    omega, beta, _ = standard_beta(chart)
    x1 = chart.coordinates()[0]
    instances = [('standard', ACSField.standard(chart)),
                 ('lee', lee_structure(g, omega, beta)),
                 ('non-constant r', build_from_alpha(
                     g, omega, beta, 0.5 * np.sin(2 * np.pi * x1)))]
    for name, (f, l, s) in _family_instances(chart, seed):
        instances.append((name, torus_family(f, l, s, chart=chart)[0]))
    return g, instances


def operator_properties(seed=0):
    """Self-adjointness of P, its two formulas and the kernel checks."""
    checks = _Checks('operator-properties')
    chart = GridChart(8)
    worst_adjoint = 0.0
    worst_formula = 0.0
    for k in range(20):
        g = random_metric(chart, random_state=seed + k)
        J = random_structure(g, random_state=seed + 50 + k)
        a = _anti(random_form(chart, 2, random_state=seed + 100 + k), J)
        b = _anti(random_form(chart, 2, random_state=seed + 150 + k), J)
        Pa, Pb = lejmi_P(a, g, J), lejmi_P(b, g, J)
        scale = l2_norm(Pa, g) * l2_norm(b, g) + l2_norm(a, g) * l2_norm(Pb, g)
        worst_adjoint = max(worst_adjoint, abs(l2_inner(Pa, b, g)
                                               - l2_inner(a, Pb, g)) / scale)
        other = lejmi_P_laplacian(a, g, J)
        worst_formula = max(worst_formula, (Pa - other).sup_norm()
                            / max(Pa.sup_norm(), 1.0))
    checks.below('self-adjointness', worst_adjoint, 1e-9)
    checks.below('formula agreement', worst_formula, 1e-8)

    for resolution in (8, 12):
        g, instances = _oracle_instances(GridChart(resolution), seed)
        for name, J in instances:
            report = h_minus(g, J, random_state=seed)
            omega = J.fundamental_form(g).pointwise()
            worst = 0.0
            for psi in report.kernel:
                values = psi.pointwise()
                worst = max(worst, ext_d(psi).sup_norm(),
                            (star(psi, g) - psi).sup_norm(),
                            float(np.max(np.abs(pointwise.inner(
                                values, omega, g.values)))))
            label = f'{name} N={resolution}'
            checks.below(f'{label} kernel forms', worst, 1e-7)
            checks.equal(f'{label} oracle', rank_test_h_minus(g, J).dim,
                         report.kernel_dim)
    return checks.rows


def weitzenbock(seed=0):
    """Integrated Weitzenböck identity on random band-limited forms."""
    checks = _Checks('weitzenbock')
    chart, g = _flat(16)
    curv = curvature(levi_civita(g))
    worst = max(weitzenbock_residual(random_form(chart, 2, random_state=seed
                                                 + k), g, curv)
                for k in range(10))
    checks.below('flat', worst, 1e-8)
    chart = GridChart(12)
    x1, x2, _, _ = chart.coordinates()
    g = MetricField.conformal(chart, 0.05 * (np.sin(2 * np.pi * x1)
                                            + np.cos(2 * np.pi * x2)))
    curv = curvature(levi_civita(g))
    worst = max(weitzenbock_residual(random_form(chart, 2, max_mode=1,
                                                 random_state=seed + k),
                                     g, curv)
                for k in range(10))
    checks.below('conformally flat', worst, 1e-6)
    return checks.rows


def type_d(seed=0):
    """Newton solves of the type D problem and the semi-continuity test."""
    checks = _Checks('type-d')
    chart = GridChart(12)
    problem = TypeDProblem.flat(chart)
    solution = solve_type_D(problem)
    checks.equal('fixed point iterations', solution.iterations, 0)

    x1 = chart.coordinates()[0]
    problem = TypeDProblem.flat(chart, F=0.1 * np.cos(2 * np.pi * x1))
    solution = solve_type_D(problem)
    checks.add('volume data iterations', solution.iterations <= 10,
               solution.iterations)
    checks.below('volume data residual', solution.residuals[-1], 1e-8)
    checks.below('volume data volume defect', solution.defects['volume'],
                 1e-6)

    g = MetricField.flat(chart)
    omega, beta, _ = standard_beta(chart)
    J = build_from_alpha(g, omega, beta,
                         0.05 * (1 - np.cos(2 * np.pi * x1)))
    solution = solve_type_D(TypeDProblem.flat(chart, J=J), tol=1e-7)
    checks.below('perturbed compatibility', solution.defects['compatibility'],
                 1e-8)
    checks.add('perturbed taming', solution.defects['taming'] > 0,
               f"{solution.defects['taming']:.3e}")

    chart = GridChart(8)
    rows = semicontinuity_experiment(bump_path(chart, [0.0, 1.0],
                                               amplitude=0.3),
                                     TypeDProblem.flat(chart),
                                     eigen_kwargs={'random_state': seed})
    start, end = rows[0], rows[-1]
    checks.equal('h_plus along path', (start.h_plus, end.h_plus), (4, 6))
    checks.equal('h_minus along path', (start.h_minus, end.h_minus), (2, 0))
    for row in rows:
        checks.add(f'ray solves t = {row.t}', not row.errors,
                   f'{row.solved} solved, {row.errors}')
        checks.add(f'semi-continuity t = {row.t}', row.holds is True,
                   f'class rank {row.class_rank}')
    return checks.rows


SUITES = {
    'flat-torus': flat_torus,
    'torus-families': torus_families,
    'lee-structure': lee_structure_suite,
    'h2-family': h2_family_suite,
    'bump-path': bump_path_suite,
    'lie-models': lie_models,
    'intersection-bound': intersection_bound,
    'operator-properties': operator_properties,
    'weitzenbock': weitzenbock,
    'type-d': type_d,
}


def run_suite(name, seed=0):
    """
    Run one acceptance suite.

    Errors inside the suite become a failed row instead of propagating.

    Parameters
    ----------
    name : str
        key of `SUITES`
    seed : int

    Returns
    -------
    rows : list of Check
    """
    if name not in SUITES:
        raise ConfigError(f'suite: unknown suite {name!r}, choose from '
                          f'{", ".join(SUITES)} or all')
    _logger.info('running suite %s', name)
    try:
        return SUITES[name](seed)
    except AlmostComplexError as err:
        return [Check(name, 'completed', False,
                      f'{type(err).__name__}: {err}')]


def run_suites(name, seed=0):
    """Run a suite or, for ``'all'``, every suite in order."""
    names = list(SUITES) if name == 'all' else [name]
    rows = []
    for suite in names:
        rows.extend(run_suite(suite, seed))
    return rows
