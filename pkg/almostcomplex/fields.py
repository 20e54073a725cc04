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

r"""
Fields on the flat 4-torus sampled on a uniform collocation grid.

A `GridChart` holds the grid and its Fourier symbols. Differential forms
are `FormField` objects with components stored first,
``components[n, i1, i2, i3, i4]``, in the lexicographic order of the
sorted index tuples (e.g. :math:`e^{12}, e^{13}, \ldots, e^{34}` for
2-forms). Metrics and almost complex structures store one 4x4 matrix per
grid point, ``values[i1, i2, i3, i4, :, :]``, which is the layout the
functions in :mod:`almostcomplex.pointwise` consume.
"""

import itertools
from math import comb

import numpy as np
import scipy.fft as spfft

from . import pointwise
from .exceptions import DegreeOverflow, DimensionMismatch

__all__ = ['GridChart', 'FormField', 'MetricField', 'ACSField',
           'form_indices']

_GRID_AXES = (-4, -3, -2, -1)


def form_indices(degree):
    """Sorted index tuples of the components of a ``degree``-form."""
    if degree < 0 or degree > 4:
        raise DegreeOverflow(f'form degree {degree} outside 0..4')
    return list(itertools.combinations(range(4), degree))


class GridChart:
    r"""
    Uniform grid on the 4-torus with spectral differentiation.

    Parameters
    ----------
    resolution : int
        Number of points ``N`` per axis. Must be even and at least 4.
    periods : sequence of 4 float
        Side lengths of the torus.

    Attributes
    ----------
    shape : tuple
        ``(N, N, N, N)``
    spacing : ndarray
        grid spacing per axis
    cell_volume : float
        volume of one grid cell
    volume : float
        coordinate volume of the torus

    Notes
    -----
    First derivatives use the Fourier symbol :math:`ik_a` with the Nyquist
    wavenumber set to zero so that derivatives of real fields stay real.
    As all derivative symbols commute, :math:`d\circ d = 0` holds exactly in
    the spectral representation.
    """

    def __init__(self, resolution=8, periods=(1.0, 1.0, 1.0, 1.0)):
        resolution = int(resolution)
        if resolution < 4 or resolution % 2:
            raise ValueError(
                f'resolution must be even and >= 4, got {resolution}')
        periods = np.asarray(periods, dtype=float)
        if periods.shape != (4,) or np.any(periods <= 0):
            raise ValueError(f'need four positive periods, got {periods}')
        self.resolution = resolution
        self.periods = periods
        self.shape = (resolution,) * 4
        self.spacing = periods / resolution
        self.cell_volume = float(np.prod(self.spacing))
        self.volume = float(np.prod(periods))
        self._build_symbols()

    def _build_symbols(self):
        n = self.resolution
        k_derivative = []
        k_full = []
        for axis in range(4):
            if axis < 3:
                freq = spfft.fftfreq(n, d=1.0 / n)
            else:
                freq = spfft.rfftfreq(n, d=1.0 / n)
            k = 2 * np.pi * freq / self.periods[axis]
            kd = np.where(np.abs(freq) == n // 2, 0.0, k)
            view = [1, 1, 1, 1]
            view[axis] = -1
            k_full.append(k.reshape(view))
            k_derivative.append(kd.reshape(view))
        self._k = k_derivative
        self.k_squared = sum(k ** 2 for k in k_derivative)
        self.k_squared_full = sum(k ** 2 for k in k_full)
        self.nyquist_free = np.ones(self.k_squared.shape, dtype=bool)
        for axis in range(4):
            freq = k_full[axis] * self.periods[axis] / (2 * np.pi)
            self.nyquist_free = self.nyquist_free & (np.abs(freq) != n // 2)

    def __repr__(self):
        return (f'GridChart(resolution={self.resolution}, '
                f'periods={tuple(self.periods)})')

    def __eq__(self, other):
        return (isinstance(other, GridChart)
                and self.resolution == other.resolution
                and np.array_equal(self.periods, other.periods))

    def __hash__(self):
        return hash((self.resolution, tuple(self.periods)))

    def coordinates(self):
        """Coordinate arrays ``x1, x2, x3, x4`` of the grid points."""
        axes = [np.arange(self.resolution) * h for h in self.spacing]
        return np.meshgrid(*axes, indexing='ij')

    def forward(self, values):
        """Real FFT over the four grid axes."""
        return spfft.rfftn(values, axes=_GRID_AXES)

    def backward(self, spectrum):
        """Inverse of `forward`."""
        return spfft.irfftn(spectrum, s=self.shape, axes=_GRID_AXES)

    def apply_symbol(self, values, symbol):
        """Multiply by a Fourier symbol broadcastable to the spectrum."""
        return self.backward(symbol * self.forward(values))

    def gradient(self, values):
        r"""
        Spectral partial derivatives.

        Parameters
        ----------
        values : (..., N, N, N, N) ndarray
            real samples

        Returns
        -------
        grad : (4, ..., N, N, N, N) ndarray
            :math:`\partial_a` of the input for a = 1..4
        """
        spectrum = self.forward(values)
        return np.stack([self.backward(1j * k * spectrum) for k in self._k])

    def derivative(self, values, axis):
        """Spectral derivative along a single axis."""
        return self.apply_symbol(values, 1j * self._k[axis])

    def integrate(self, values):
        """Trapezoidal (spectrally exact) integral over the torus."""
        return np.sum(values, axis=_GRID_AXES) * self.cell_volume

    def mean(self, values):
        """Average over the torus."""
        return np.mean(values, axis=_GRID_AXES)

    def inverse_laplacian(self, values):
        r"""
        Flat :math:`\Delta^{-1}` on the modes the derivative symbols see.

        Mean and Nyquist-only modes are mapped to zero.
        """
        symbol = np.zeros_like(self.k_squared)
        mask = self.k_squared > 0
        symbol[mask] = 1.0 / self.k_squared[mask]
        return self.apply_symbol(values, symbol)

    def remove_nyquist(self, values):
        """Project out every Fourier mode touching a Nyquist frequency."""
        return self.apply_symbol(values, self.nyquist_free)


class FormField:
    """
    Differential form on a `GridChart`.

    Parameters
    ----------
    chart : GridChart
        grid the form lives on
    degree : int
        form degree, 0..4
    components : (C(4, degree), N, N, N, N) ndarray
        component arrays in lexicographic index order. A scalar array of the
        grid shape is accepted for ``degree=0``.
    """

    def __init__(self, chart, degree, components):
        self.chart = chart
        self.degree = int(degree)
        self.indices = form_indices(self.degree)
        components = np.asarray(components, dtype=float)
        if self.degree == 0 and components.shape == chart.shape:
            components = components[None]
        expected = (comb(4, self.degree),) + chart.shape
        if components.shape != expected:
            raise DimensionMismatch(
                f'components of shape {components.shape}, expected '
                f'{expected}')
        if not np.all(np.isfinite(components)):
            raise ValueError('form components must be finite')
        self.components = components

    @classmethod
    def zeros(cls, chart, degree):
        """Zero form."""
        return cls(chart, degree,
                   np.zeros((comb(4, degree),) + chart.shape))

    @classmethod
    def constant(cls, chart, degree, values):
        """Form with constant components ``values``."""
        values = np.asarray(values, dtype=float).reshape(-1, 1, 1, 1, 1)
        return cls(chart, degree, values * np.ones(chart.shape))

    @classmethod
    def from_pointwise(cls, chart, values, degree=2):
        """Build from an array with components last, ``(N, N, N, N, C)``."""
        return cls(chart, degree, np.moveaxis(values, -1, 0))

    def pointwise(self):
        """Components last, the layout of :mod:`almostcomplex.pointwise`."""
        return np.moveaxis(self.components, 0, -1)

    @property
    def scalar(self):
        """Component array of a 0-form or 4-form."""
        if self.degree not in (0, 4):
            raise DegreeOverflow('scalar view needs degree 0 or 4')
        return self.components[0]

    def _check_same(self, other):
        if not isinstance(other, FormField):
            raise TypeError(f'expected FormField, got {type(other)}')
        if other.chart != self.chart or other.degree != self.degree:
            raise DimensionMismatch('forms live on different spaces')

    def __add__(self, other):
        self._check_same(other)
        return FormField(self.chart, self.degree,
                         self.components + other.components)

    def __sub__(self, other):
        self._check_same(other)
        return FormField(self.chart, self.degree,
                         self.components - other.components)

    def __neg__(self):
        return FormField(self.chart, self.degree, -self.components)

    def __mul__(self, factor):
        # scalars or 0-forms / grid arrays act componentwise
        if isinstance(factor, FormField):
            if factor.degree != 0:
                raise TypeError('use calculus.wedge for products of forms')
            factor = factor.scalar
        factor = np.asarray(factor, dtype=float)
        return FormField(self.chart, self.degree, self.components * factor)

    __rmul__ = __mul__

    def __truediv__(self, factor):
        return self * (1.0 / np.asarray(factor, dtype=float))

    def sup_norm(self):
        """Largest absolute component value."""
        return float(np.max(np.abs(self.components)))

    def __repr__(self):
        return (f'FormField(degree={self.degree}, '
                f'resolution={self.chart.resolution})')


class _MatrixField:
    # one 4x4 matrix per grid point

    def __init__(self, chart, values):
        values = np.asarray(values, dtype=float)
        expected = chart.shape + (4, 4)
        if values.shape != expected:
            raise DimensionMismatch(
                f'values of shape {values.shape}, expected {expected}')
        if not np.all(np.isfinite(values)):
            raise ValueError('field values must be finite')
        self.chart = chart
        self.values = values

    @classmethod
    def constant(cls, chart, matrix):
        """Field with the same matrix at every grid point."""
        matrix = np.asarray(matrix, dtype=float)
        return cls(chart, np.broadcast_to(matrix, chart.shape + (4, 4)).copy())


class MetricField(_MatrixField):
    r"""
    Riemannian metric on the grid.

    Parameters
    ----------
    chart : GridChart
    values : (N, N, N, N, 4, 4) ndarray
        symmetric positive definite matrices

    Notes
    -----
    The metric induced on p-forms is the p-th compound matrix of
    :math:`g^{-1}`; `mass` returns it multiplied by :math:`\sqrt{\det g}`,
    which is the pointwise weight of the :math:`L^2` product.
    """

    def __init__(self, chart, values):
        super().__init__(chart, values)
        pointwise.check_metric(self.values)
        self.is_identity = bool(np.array_equal(
            self.values, np.broadcast_to(np.eye(4), self.values.shape)))
        self.inverse = np.linalg.inv(self.values)
        self.sqrt_det = np.sqrt(np.linalg.det(self.values))
        self._compounds = {}

    @classmethod
    def flat(cls, chart):
        """Euclidean metric."""
        return cls.constant(chart, np.eye(4))

    @classmethod
    def conformal(cls, chart, u, base=None):
        r"""Conformal rescaling :math:`e^{2u} g` of ``base`` (flat if None)."""
        if isinstance(u, FormField):
            u = u.scalar
        base = cls.flat(chart) if base is None else base
        return cls(chart, np.exp(2 * u)[..., None, None] * base.values)

    def compound(self, degree):
        """p-th compound of the inverse metric, ``(N, N, N, N, C, C)``."""
        if degree not in self._compounds:
            self._compounds[degree] = _compound(self.inverse, degree)
        return self._compounds[degree]

    def mass(self, degree):
        """Pointwise :math:`L^2` weight on ``degree``-forms."""
        return self.compound(degree) * self.sqrt_det[..., None, None]


class ACSField(_MatrixField):
    """
    Almost complex structure on the grid.

    Parameters
    ----------
    chart : GridChart
    values : (N, N, N, N, 4, 4) ndarray
        matrices squaring to minus the identity
    """

    def __init__(self, chart, values, tol=1e-10):
        super().__init__(chart, values)
        pointwise.check_acs(self.values, tol=tol)

    @classmethod
    def standard(cls, chart):
        """Constant standard structure."""
        return cls.constant(chart, pointwise.standard_acs())

    def __neg__(self):
        return ACSField(self.chart, -self.values)

    def fundamental_form(self, g, tol=1e-10):
        """Fundamental form as a `FormField` of degree 2."""
        omega = pointwise.fundamental_form(g.values, self.values, tol=tol)
        return FormField.from_pointwise(self.chart, omega)

    def is_constant(self):
        """True if the structure takes the same value everywhere."""
        return bool(np.all(self.values == self.values[0, 0, 0, 0]))


def _compound(matrix, degree):
    # p-th compound matrix: minors over sorted index tuples
    indices = form_indices(degree)
    size = len(indices)
    out = np.empty(matrix.shape[:-2] + (size, size))
    if degree == 0:
        out[...] = 1.0
        return out
    for a, rows in enumerate(indices):
        for b, cols in enumerate(indices):
            sub = matrix[..., list(rows), :][..., :, list(cols)]
            out[..., a, b] = np.linalg.det(sub)
    return out
