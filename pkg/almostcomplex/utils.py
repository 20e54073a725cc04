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
Seeded test data on the torus grid.
"""

from math import comb

import numpy as np
import scipy.fft as spfft
from sklearn.utils import check_random_state

from . import pointwise
from .fields import FormField, MetricField, ACSField

__all__ = ['random_form', 'random_admissible_triple', 'random_metric',
           'random_structure']


def _band_mask(chart, max_mode):
    n = chart.resolution
    if max_mode >= n // 2:
        raise ValueError(f'max_mode {max_mode} reaches the Nyquist '
                         f'frequency of N = {n}')
    freqs = [spfft.fftfreq(n, d=1.0 / n)] * 3 + [spfft.rfftfreq(n, d=1.0 / n)]
    grids = np.meshgrid(*freqs, indexing='ij')
    return np.all([np.abs(f) <= max_mode for f in grids], axis=0)


def random_form(chart, degree=2, max_mode=2, amplitude=1.0,
                random_state=None):
    r"""
    Random band-limited form.

    Every component is a random trigonometric polynomial with integer
    frequencies up to ``max_mode`` along each axis.

    Parameters
    ----------
    chart : GridChart
    degree : int
        form degree
    max_mode : int
        largest frequency per axis, below N / 2
    amplitude : float
        sup norm of the result
    random_state : {None, int, RandomState}
        seed

    Returns
    -------
    form : FormField
    """
    rng = check_random_state(random_state)
    mask = _band_mask(chart, max_mode)
    shape = (comb(4, degree),) + mask.shape
    spectrum = (rng.standard_normal(shape)
                + 1j * rng.standard_normal(shape)) * mask
    values = chart.backward(spectrum)
    scale = float(np.max(np.abs(values)))
    if scale > 0:
        values *= amplitude / scale
    return FormField(chart, degree, values)


def random_admissible_triple(chart, max_mode=1, amplitude=0.3,
                             random_state=None):
    r"""
    Random functions f, l, s with :math:`f^2 + l^2 + s^2 = 1`.

    A band-limited perturbation of the constant triple (1, 0, 0),
    normalized pointwise. Generic draws span a three dimensional space.

    Returns
    -------
    f, l, s : (N, N, N, N) ndarray
    """
    rng = check_random_state(random_state)
    raw = random_form(chart, 0, max_mode, amplitude, rng).scalar
    f = 1.0 + raw
    l = random_form(chart, 0, max_mode, amplitude, rng).scalar
    s = random_form(chart, 0, max_mode, amplitude, rng).scalar
    norm = np.sqrt(f ** 2 + l ** 2 + s ** 2)
    return f / norm, l / norm, s / norm


def random_metric(chart, max_mode=1, amplitude=0.1, random_state=None):
    """
    Band-limited perturbation of the flat metric.

    Parameters
    ----------
    chart : GridChart
    max_mode : int
    amplitude : float
        sup norm of every perturbation entry, below 0.25 keeps the metric
        positive definite
    random_state : {None, int, RandomState}

    Returns
    -------
    g : MetricField
    """
    rng = check_random_state(random_state)
    entries = random_form(chart, 2, max_mode, amplitude, rng)
    diagonal = random_form(chart, 1, max_mode, amplitude, rng)
    values = np.zeros(chart.shape + (4, 4))
    for n, (i, j) in enumerate(pointwise.PAIRS):
        values[..., i, j] = entries.components[n]
        values[..., j, i] = entries.components[n]
    for i in range(4):
        values[..., i, i] = 1.0 + diagonal.components[i]
    return MetricField(chart, values)


def random_structure(g, max_mode=1, amplitude=0.3, random_state=None):
    r"""
    Random g-compatible structure inducing the orientation of the grid.

    The fundamental form is the normalized self-dual part of a random
    constant 2-form plus a band-limited perturbation.

    Parameters
    ----------
    g : MetricField
    max_mode : int
    amplitude : float
        size of the perturbation relative to the constant part
    random_state : {None, int, RandomState}

    Returns
    -------
    J : ACSField
    """
    rng = check_random_state(random_state)
    direction = rng.standard_normal(3)
    direction /= np.linalg.norm(direction)
    # unit direction in the flat self-dual forms
    constant = (direction[0] * np.array([1, 0, 0, 0, 0, 1])
                + direction[1] * np.array([0, 1, 0, 0, -1, 0])
                + direction[2] * np.array([0, 0, 1, 1, 0, 0]))
    perturbation = random_form(g.chart, 2, max_mode, amplitude, rng)
    raw = constant + perturbation.pointwise()
    self_dual = pointwise.project_self_dual(raw, g.values)
    n2 = pointwise.norm2(self_dual, g.values)
    omega = self_dual * np.sqrt(2.0 / n2)[..., None]
    return ACSField(g.chart, pointwise.acs_from_form(g.values, omega))
