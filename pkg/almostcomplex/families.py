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
Explicit families of almost complex structures.

Every structure compatible with a metric g and inducing its orientation is
given by a self-dual form :math:`\tilde\omega` with
:math:`|\tilde\omega|_g^2 = 2`. The constructors below write
:math:`\tilde\omega = f\omega + \tilde\beta` with :math:`\tilde\beta`
anti-invariant for a reference structure J with fundamental form
:math:`\omega`, and choose f to satisfy the norm condition
:math:`2f^2 + |\tilde\beta|_g^2 = 2`.
"""

import logging

import numpy as np

from . import pointwise
from .anti_invariant import PathOfACS, joint_rank_test, _same_up_to_sign
from .calculus import ext_d
from .exceptions import (NormViolation, InputNotAntiInvariant,
                         IdenticalStructures)
from .fields import FormField, MetricField, ACSField

__all__ = [
    'bump', 'build_from_forms', 'build_from_alpha', 'lee_structure',
    'conformal_structure', 'twisted_from_alpha', 'two_bump_structure',
    'bump_path', 'standard_beta', 'torus_family', 'h2_family',
    'rank_span', 'intersection_dim',
]

_logger = logging.getLogger(__name__)

NORM_TOL = 1e-12


def _scalar(chart, value):
    # ScalarField: float, grid array or 0-form
    if isinstance(value, FormField):
        if value.degree != 0:
            raise TypeError('expected a 0-form')
        return value.scalar
    return np.broadcast_to(np.asarray(value, dtype=float), chart.shape)


def _sign(sign):
    if sign not in (1, -1, '+', '-'):
        raise ValueError(f'sign must be +1 or -1, got {sign!r}')
    return 1.0 if sign in (1, '+') else -1.0


def bump(chart, center=0.5, width=0.25, axis=0):
    r"""
    Smooth bump in one coordinate.

    :math:`\exp(1 - 1/(1 - s^2))` for :math:`|s| < 1`, zero otherwise, with
    s the periodic distance to ``center`` divided by ``width``.

    Parameters
    ----------
    chart : GridChart
    center : float
        center in units of the period
    width : float
        support radius in units of the period, below 0.5
    axis : int
        coordinate axis, 0..3

    Returns
    -------
    values : (N, N, N, N) ndarray
        bump with maximum 1, exactly zero outside its support
    """
    if not 0 < width < 0.5:
        raise ValueError(f'width must lie in (0, 0.5), got {width}')
    x = chart.coordinates()[axis] / chart.periods[axis]
    distance = np.abs(((x - center) + 0.5) % 1.0 - 0.5) / width
    out = np.zeros(chart.shape)
    inside = distance < 1
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - distance[inside] ** 2))
    return out


def build_from_forms(g, omega, beta_tilde, sign=1):
    r"""
    Structure with fundamental form :math:`f\omega + \tilde\beta`.

    Parameters
    ----------
    g : MetricField
    omega : FormField
        fundamental form of a g-compatible structure J
    beta_tilde : FormField
        J-anti-invariant 2-form with :math:`|\tilde\beta|_g^2 < 2`
    sign : {1, -1}
        sign of f

    Returns
    -------
    J_tilde : ACSField
        structure equal to ``sign * J`` where ``beta_tilde`` vanishes

    Raises
    ------
    NormViolation
        if :math:`|\tilde\beta|_g^2 \geq 2` somewhere
    InputNotAntiInvariant
        if ``beta_tilde`` is not J-anti-invariant
    """
    sign = _sign(sign)
    omega_values = omega.pointwise()
    beta = beta_tilde.pointwise()
    J = pointwise.acs_from_form(g.values, omega_values)
    inv, _ = pointwise.split_J(beta, J)
    defect = float(np.max(np.abs(inv))) / max(1.0, beta_tilde.sup_norm())
    if defect > 1e-10:
        raise InputNotAntiInvariant(
            f'deformation has a J-invariant part of size {defect:.3e}')
    n2 = pointwise.norm2(beta, g.values)
    if np.any(n2 >= 2.0):
        raise NormViolation(
            f'|beta|^2 reaches {n2.max():.6f}, must stay below 2')
    f = sign * np.sqrt(1.0 - 0.5 * n2)
    omega_tilde = f[..., None] * omega_values + beta
    J_tilde = pointwise.acs_from_form(g.values, omega_tilde)
    untouched = np.all(beta == 0, axis=-1)
    J_tilde[untouched] = sign * J[untouched]
    return ACSField(g.chart, J_tilde)


def _check_closed(alpha, tol=1e-8):
    defect = ext_d(alpha).sup_norm()
    scale = max(1.0, alpha.sup_norm())
    if defect > tol * scale * max(1.0, np.sqrt(alpha.chart.k_squared.max())):
        raise ValueError(f'alpha is not closed (|d alpha| = {defect:.3e})')


def build_from_alpha(g, omega, alpha, r, sign=1):
    r"""
    Structure with fundamental form :math:`f\omega + r\alpha`.

    Parameters
    ----------
    g : MetricField
    omega : FormField
        fundamental form of a g-compatible structure J
    alpha : FormField
        closed J-anti-invariant 2-form
    r : {float, ndarray, FormField}
        scalar field with :math:`r^2|\alpha|_g^2 < 2`
    sign : {1, -1}
        sign of :math:`f = \pm(1 - \frac{1}{2}r^2|\alpha|^2)^{1/2}`

    Returns
    -------
    J_tilde : ACSField
    """
    _check_closed(alpha)
    r = _scalar(g.chart, r)
    return build_from_forms(g, omega, alpha * r, sign)


def _alpha_norm2(g, omega, alpha):
    J = pointwise.acs_from_form(g.values, omega.pointwise())
    inv, _ = pointwise.split_J(alpha.pointwise(), J)
    if float(np.max(np.abs(inv))) > 1e-10 * max(1.0, alpha.sup_norm()):
        raise InputNotAntiInvariant('alpha is not J-anti-invariant')
    return pointwise.norm2(alpha.pointwise(), g.values)


def lee_structure(g, omega, alpha, sign=1):
    r"""
    Structure with :math:`r = 4/(2 + |\alpha|^2)` and
    :math:`f = \pm(2 - |\alpha|^2)/(2 + |\alpha|^2)`.

    The norm condition holds identically in :math:`|\alpha|^2`.
    """
    sign = _sign(sign)
    _check_closed(alpha)
    n2 = _alpha_norm2(g, omega, alpha)
    f = sign * (2.0 - n2) / (2.0 + n2)
    r = 4.0 / (2.0 + n2)
    omega_tilde = f[..., None] * omega.pointwise() \
        + r[..., None] * alpha.pointwise()
    return ACSField(g.chart, pointwise.acs_from_form(g.values, omega_tilde))


def conformal_structure(g, omega, alpha, sign=1):
    r"""
    Structure with fundamental form proportional to :math:`\pm\omega +
    \alpha`, i.e. :math:`r = f/\pm = \sqrt{2}/\sqrt{2 + |\alpha|^2}`.
    """
    sign = _sign(sign)
    _check_closed(alpha)
    n2 = _alpha_norm2(g, omega, alpha)
    scale = np.sqrt(2.0 / (2.0 + n2))[..., None]
    omega_tilde = scale * (sign * omega.pointwise() + alpha.pointwise())
    return ACSField(g.chart, pointwise.acs_from_form(g.values, omega_tilde))


def twisted_from_alpha(g, omega, alpha, r, sign=1):
    r"""
    Structure with fundamental form :math:`f\omega + rJ\alpha`.

    The form ``alpha`` is anti-invariant for both J and the result, so
    :math:`[\alpha]` lies in both anti-invariant cohomologies.

    Parameters
    ----------
    g : MetricField
    omega : FormField
        fundamental form of a g-compatible structure J
    alpha : FormField
        closed J-anti-invariant 2-form
    r : {float, ndarray, FormField}
        scalar field with :math:`r^2|\alpha|_g^2 < 2`
    sign : {1, -1}

    Returns
    -------
    J_tilde : ACSField
    """
    _check_closed(alpha)
    J = pointwise.acs_from_form(g.values, omega.pointwise())
    j_alpha = pointwise.j_act(alpha.pointwise(), J)
    j_alpha = FormField.from_pointwise(g.chart, j_alpha)
    return build_from_forms(g, omega, j_alpha * _scalar(g.chart, r), sign)


def standard_beta(chart):
    r"""
    Constant forms :math:`\omega = e^{12} + e^{34}`, :math:`\beta = e^{13} -
    e^{24}` and :math:`J\beta = e^{14} + e^{23}` of the standard structure.
    """
    omega = FormField.constant(chart, 2, [1, 0, 0, 0, 0, 1])
    beta = FormField.constant(chart, 2, [0, 1, 0, 0, -1, 0])
    j_beta = FormField.constant(chart, 2, [0, 0, 1, 1, 0, 0])
    return omega, beta, j_beta


def two_bump_structure(g, omega, beta, amplitude=0.5, centers=(0.25, 0.75),
                       width=0.2, axis=0):
    r"""
    Deformation by two bumps with disjoint supports along :math:`\beta` and
    :math:`J\beta`.

    For a flat Kaehler base this removes the whole anti-invariant
    cohomology: a constant anti-invariant class orthogonal to the deformed
    form on both supports and outside them vanishes.

    Parameters
    ----------
    g : MetricField
    omega : FormField
        fundamental form of a g-compatible structure J
    beta : FormField
        closed J-anti-invariant form with :math:`|\beta|_g^2 = 2`
    amplitude : float
        bump height, ``abs(amplitude) < 1``
    centers : pair of float
        bump centers along ``axis``
    width : float
        support radius, at most a quarter of the center distance apart
    axis : int
        coordinate axis of the bumps

    Returns
    -------
    J_tilde : ACSField
    """
    chart = g.chart
    J = pointwise.acs_from_form(g.values, omega.pointwise())
    j_beta = FormField.from_pointwise(
        chart, pointwise.j_act(beta.pointwise(), J))
    first = bump(chart, centers[0], width, axis)
    second = bump(chart, centers[1], width, axis)
    if np.any((first > 0) & (second > 0)):
        raise ValueError('bump supports overlap')
    deformation = beta * (amplitude * first) + j_beta * (amplitude * second)
    return build_from_forms(g, omega, deformation)


def bump_path(chart, samples, amplitude=0.5, **kwargs):
    """
    Path from the standard structure to a two-bump deformation.

    Parameters
    ----------
    chart : GridChart
    samples : sequence of float
        path parameters in [0, 1]
    amplitude : float
        bump height at t = 1
    **kwargs
        passed to `two_bump_structure`

    Returns
    -------
    path : PathOfACS
    """
    g = MetricField.flat(chart)
    omega, beta, _ = standard_beta(chart)

    def rule(t):
        return two_bump_structure(g, omega, beta, amplitude=t * amplitude,
                                  **kwargs)

    return PathOfACS(samples, rule)


def torus_family(f, l, s, chart=None, tol=NORM_TOL):
    r"""
    Structure :math:`J_{f,l,s}` with fundamental form
    :math:`f\omega + l\beta + sJ\beta` on the flat torus.

    On the flat (hyperkaehler) base the closed self-dual forms are the
    constants, so :math:`h^- = 3 - \mathrm{rank}\,\mathrm{span}(f, l, s)`.

    Parameters
    ----------
    f, l, s : {float, ndarray, FormField}
        scalar fields with :math:`f^2 + l^2 + s^2 = 1`
    chart : {None, GridChart}
        grid, taken from the arguments if None
    tol : float
        tolerance of the norm condition

    Returns
    -------
    J : ACSField
    predicted_h_minus : int
    """
    if chart is None:
        chart = next((a.chart for a in (f, l, s) if isinstance(a, FormField)),
                     None)
        if chart is None:
            raise ValueError('need a chart for constant coefficients')
    f, l, s = (_scalar(chart, a) for a in (f, l, s))
    defect = float(np.max(np.abs(f ** 2 + l ** 2 + s ** 2 - 1.0)))
    if defect > tol:
        raise NormViolation(
            f'2f^2 + |beta|^2 (l^2 + s^2) differs from 2 by {2 * defect:.3e}')
    omega, beta, j_beta = standard_beta(chart)
    omega_tilde = omega * f + beta * l + j_beta * s
    g = MetricField.flat(chart)
    J = ACSField(chart, pointwise.acs_from_form(g.values,
                                                omega_tilde.pointwise()))
    # with |beta|^2 = 2: f' = 2f, l' = 2l, s' = 2s
    predicted = 3 - rank_span([2 * f, 2 * l, 2 * s], chart=chart)
    return J, predicted


def h2_family(k1, k2, sign=1):
    r"""
    Coefficients of the family with :math:`h^- = 2` on the flat torus.

    With :math:`w = (2 + 2(k_1^2 + k_2^2))^{-1/2}` the constants are
    :math:`f = \pm\sqrt{2}w`, :math:`l = \sqrt{2}k_1 w` and
    :math:`s = \sqrt{2}k_2 w`.

    Returns
    -------
    f, l, s : float
    """
    sign = _sign(sign)
    w = (2.0 + 2.0 * (k1 ** 2 + k2 ** 2)) ** -0.5
    root = np.sqrt(2.0)
    return sign * root * w, root * k1 * w, root * k2 * w


def rank_span(functions, tol=1e-8, chart=None):
    """
    Dimension of the span of scalar fields.

    Counts the eigenvalues of the L2 Gram matrix above ``tol`` times the
    largest one.

    Parameters
    ----------
    functions : list of {float, ndarray, FormField}
    tol : float
        relative eigenvalue threshold
    chart : {None, GridChart}
        integration grid; plain sums are used if None

    Returns
    -------
    rank : int
    """
    if not functions:
        return 0
    arrays = [f.scalar if isinstance(f, FormField) else
              np.asarray(f, dtype=float) for f in functions]
    shape = np.broadcast_shapes(*(a.shape for a in arrays))
    if chart is not None:
        shape = np.broadcast_shapes(shape, chart.shape)
    stacked = np.stack([np.broadcast_to(a, shape).ravel() for a in arrays])
    weight = chart.cell_volume if chart is not None else 1.0
    gram = weight * stacked @ stacked.T
    eigenvalues = np.linalg.eigvalsh(gram)
    largest = float(eigenvalues.max())
    if largest <= 0:
        return 0
    return int(np.sum(eigenvalues > tol * largest))


def intersection_dim(J1, J2, g, threshold=1e-8):
    r"""
    Dimension of :math:`H^-_{J_1} \cap H^-_{J_2}` for two structures
    compatible with the same metric.

    Parameters
    ----------
    J1, J2 : ACSField
    g : MetricField
        metric compatible with both structures
    threshold : float
        rank threshold

    Returns
    -------
    dim : int
        at most 1 for different structures
    """
    if _same_up_to_sign(J1, J2):
        raise IdenticalStructures('J1 equals +-J2 at every point')
    dim = joint_rank_test(g, [J1, J2], threshold=threshold).dim
    if dim > 1:
        _logger.warning('intersection of dimension %d exceeds the bound 1',
                        dim)
    return dim
