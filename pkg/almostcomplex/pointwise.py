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
Linear algebra on a single tangent space of an oriented 4-manifold.

Metrics ``g`` and almost complex structures ``J`` are 4x4 matrices, 2-forms
are vectors of their six components in the order
:math:`e^{12}, e^{13}, e^{14}, e^{23}, e^{24}, e^{34}`. Every function
accepts arbitrary leading batch axes, i.e. ``g`` of shape ``(..., 4, 4)``
and 2-forms of shape ``(..., 6)``, so that the same code evaluates a single
value or a whole grid of values.

Conventions: ``J`` acts on vectors, :math:`(JX)^i = J^i_j X^j`; the
fundamental form is :math:`\omega(X, Y) = g(JX, Y)`; the orientation is
:math:`e^1\wedge e^2\wedge e^3\wedge e^4`; and each :math:`e^i\wedge e^j`
has unit norm for the Euclidean metric, so that :math:`|\omega|^2 = 2`.
"""

import itertools
from collections import namedtuple

import numpy as np

from .exceptions import (
    DegenerateMetric, IncompatiblePair, NotOnTwistorFiber,
    InputNotAntiInvariant,
)

__all__ = [
    'PAIRS', 'SplitBasis', 'two_form_matrix', 'two_form_vector',
    'check_metric', 'check_acs', 'inner', 'norm2', 'split_J', 'j_act',
    'hodge_star', 'project_self_dual', 'pfaffian', 'fundamental_form',
    'acs_from_form', 'metric_from_form', 'average_metric', 'tames',
    'split_basis', 'standard_acs', 'euclidean_metric',
]

DEFAULT_TOL = 1e-10

PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

SplitBasis = namedtuple('SplitBasis', ['omega', 'minus_basis', 'asd_basis'])
SplitBasis.__doc__ = """
Orthogonal splitting of the 2-forms of a compatible pair ``(g, J)``.

``omega`` is the fundamental form, ``minus_basis`` two forms spanning the
J-anti-invariant forms and ``asd_basis`` three anti-self-dual forms. All
entries are mutually orthogonal and have norm squared 2.
"""


def _levi_civita():
    eps = np.zeros((4, 4, 4, 4))
    for perm in itertools.permutations(range(4)):
        inversions = sum(1 for i in range(4) for j in range(i + 1, 4)
                         if perm[i] > perm[j])
        eps[perm] = -1.0 if inversions % 2 else 1.0
    return eps


_EPS = _levi_civita()


def _relative_defect(value, reference):
    scale = max(1.0, float(np.max(np.abs(reference))))
    return float(np.max(np.abs(value))) / scale


def standard_acs():
    r"""
    Return the standard structure with :math:`Je_1 = e_2, Je_3 = e_4`.
    """
    J = np.zeros((4, 4))
    J[1, 0] = 1.0
    J[0, 1] = -1.0
    J[3, 2] = 1.0
    J[2, 3] = -1.0
    return J


def euclidean_metric():
    """Return the Euclidean metric."""
    return np.eye(4)


def two_form_matrix(alpha):
    """
    Antisymmetric matrix of a 2-form given by its six components.

    Parameters
    ----------
    alpha : (..., 6) ndarray
        2-form components

    Returns
    -------
    A : (..., 4, 4) ndarray
        antisymmetric matrix with ``A[..., i, j] = alpha(e_i, e_j)``
    """
    alpha = np.asarray(alpha, dtype=float)
    A = np.zeros(alpha.shape[:-1] + (4, 4))
    for n, (i, j) in enumerate(PAIRS):
        A[..., i, j] = alpha[..., n]
        A[..., j, i] = -alpha[..., n]
    return A


def two_form_vector(A):
    """Six components of the antisymmetric part of ``A``."""
    A = np.asarray(A, dtype=float)
    return np.stack([0.5 * (A[..., i, j] - A[..., j, i]) for i, j in PAIRS],
                    axis=-1)


def check_metric(g):
    """
    Raise `DegenerateMetric` unless ``g`` is symmetric positive definite.
    """
    g = np.asarray(g, dtype=float)
    if _relative_defect(g - np.swapaxes(g, -1, -2), g) > DEFAULT_TOL:
        raise DegenerateMetric('metric is not symmetric')
    eigenvalues = np.linalg.eigvalsh(g)
    if np.any(eigenvalues <= 0):
        raise DegenerateMetric(
            f'metric is not positive definite: smallest eigenvalue '
            f'{eigenvalues.min():.3e}')
    return g


def check_acs(J, tol=DEFAULT_TOL):
    """Raise ``ValueError`` unless ``J`` squares to minus the identity."""
    J = np.asarray(J, dtype=float)
    defect = _relative_defect(J @ J + np.eye(4), J)
    if defect > tol:
        raise ValueError(f'J does not square to -Id (defect {defect:.3e})')
    return J


def inner(alpha, beta, g=None):
    r"""
    Pointwise inner product of two 2-forms.

    Parameters
    ----------
    alpha, beta : (..., 6) ndarray
        2-forms
    g : {None, (..., 4, 4) ndarray}
        metric. Euclidean if None.

    Returns
    -------
    product : (...) ndarray
        :math:`\frac{1}{2} g^{ik} g^{jl} \alpha_{ij} \beta_{kl}`
    """
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    if g is None:
        return np.sum(alpha * beta, axis=-1)
    g_inv = np.linalg.inv(g)
    A = two_form_matrix(alpha)
    B = two_form_matrix(beta)
    return 0.5 * np.einsum('...ik,...jl,...ij,...kl->...', g_inv, g_inv, A, B)


def norm2(alpha, g=None):
    """Pointwise norm squared of a 2-form."""
    return inner(alpha, alpha, g)


def _pullback(alpha, J):
    # alpha(J., J.)
    A = two_form_matrix(alpha)
    return two_form_vector(np.swapaxes(J, -1, -2) @ A @ J)


def split_J(alpha, J):
    r"""
    Split a 2-form into its J-invariant and J-anti-invariant parts.

    Parameters
    ----------
    alpha : (..., 6) ndarray
        2-form
    J : (..., 4, 4) ndarray
        almost complex structure

    Returns
    -------
    inv : (..., 6) ndarray
        :math:`\alpha' = \frac{1}{2}(\alpha + \alpha(J\cdot, J\cdot))`
    anti : (..., 6) ndarray
        :math:`\alpha'' = \frac{1}{2}(\alpha - \alpha(J\cdot, J\cdot))`
    """
    alpha = np.asarray(alpha, dtype=float)
    pulled = _pullback(alpha, J)
    return 0.5 * (alpha + pulled), 0.5 * (alpha - pulled)


def j_act(beta, J, tol=DEFAULT_TOL):
    r"""
    Complex structure on J-anti-invariant 2-forms.

    Computes :math:`(J\beta)(X, Y) = -\beta(JX, Y)`. The opposite sign
    convention would flip the result.

    Parameters
    ----------
    beta : (..., 6) ndarray
        J-anti-invariant 2-form
    J : (..., 4, 4) ndarray
        almost complex structure
    tol : {float, None}
        Tolerance of the anti-invariance check. None skips the check.

    Returns
    -------
    j_beta : (..., 6) ndarray
        anti-invariant 2-form
    """
    beta = np.asarray(beta, dtype=float)
    if tol is not None:
        defect = _relative_defect(_pullback(beta, J) + beta, beta)
        if defect > tol:
            raise InputNotAntiInvariant(
                f'input is not J-anti-invariant (defect {defect:.3e})')
    B = two_form_matrix(beta)
    return two_form_vector(-np.swapaxes(J, -1, -2) @ B)


def hodge_star(alpha, g=None):
    r"""
    Hodge star of a 2-form.

    :math:`(*\alpha)_{kl} = \frac{1}{2}\sqrt{\det g}\,\alpha^{ij}
    \varepsilon_{ijkl}` with respect to the orientation
    :math:`e^{1234}`.

    Parameters
    ----------
    alpha : (..., 6) ndarray
        2-form
    g : {None, (..., 4, 4) ndarray}
        metric, Euclidean if None

    Returns
    -------
    star_alpha : (..., 6) ndarray
    """
    A = two_form_matrix(alpha)
    if g is None:
        raised = A
        volume = 1.0
    else:
        check_metric(g)
        g_inv = np.linalg.inv(g)
        raised = g_inv @ A @ g_inv
        volume = np.sqrt(np.linalg.det(g))[..., None, None]
    star = 0.5 * np.einsum('...ij,ijkl->...kl', raised, _EPS)
    return two_form_vector(volume * star)


def project_self_dual(alpha, g=None):
    """Self-dual part of a 2-form."""
    return 0.5 * (np.asarray(alpha, dtype=float) + hodge_star(alpha, g))


def pfaffian(alpha):
    r"""
    Pfaffian of a 2-form, :math:`\alpha\wedge\alpha = 2\,\mathrm{Pf}(\alpha)
    \, e^{1234}`.
    """
    alpha = np.asarray(alpha, dtype=float)
    return (alpha[..., 0] * alpha[..., 5] - alpha[..., 1] * alpha[..., 4]
            + alpha[..., 2] * alpha[..., 3])


def _check_compatible(g, J, tol):
    JT = np.swapaxes(J, -1, -2)
    defect = _relative_defect(JT @ g @ J - g, g)
    if defect > tol:
        raise IncompatiblePair(
            f'g(J., J.) differs from g (relative defect {defect:.3e})')


def fundamental_form(g, J, tol=DEFAULT_TOL):
    r"""
    Fundamental form :math:`\omega(\cdot, \cdot) = g(J\cdot, \cdot)`.

    Parameters
    ----------
    g : (..., 4, 4) ndarray
        metric
    J : (..., 4, 4) ndarray
        g-compatible almost complex structure inducing the reference
        orientation
    tol : float
        compatibility tolerance

    Returns
    -------
    omega : (..., 6) ndarray
        self-dual 2-form with norm squared 2
    """
    g = check_metric(g)
    J = check_acs(J, tol=max(tol, DEFAULT_TOL))
    _check_compatible(g, J, tol)
    omega = two_form_vector(np.swapaxes(J, -1, -2) @ g)
    if np.any(pfaffian(omega) <= 0):
        raise IncompatiblePair('J does not induce the reference orientation')
    return omega


def acs_from_form(g, omega_tilde, tol=DEFAULT_TOL):
    r"""
    Almost complex structure with fundamental form ``omega_tilde``.

    The point of the twistor fiber is a g-self-dual 2-form of norm squared
    2; the structure is raised from it with the metric,
    :math:`\tilde J = -g^{-1}\tilde\omega`.

    Parameters
    ----------
    g : (..., 4, 4) ndarray
        metric
    omega_tilde : (..., 6) ndarray
        self-dual 2-form with :math:`|\tilde\omega|_g^2 = 2`
    tol : float
        tolerance of the fiber conditions

    Returns
    -------
    J : (..., 4, 4) ndarray
        g-compatible almost complex structure
    """
    omega_tilde = np.asarray(omega_tilde, dtype=float)
    g = check_metric(g)
    norm_defect = float(np.max(np.abs(norm2(omega_tilde, g) - 2.0)))
    if norm_defect > tol:
        raise NotOnTwistorFiber(
            f'|omega|^2 differs from 2 by {norm_defect:.3e}')
    sd_defect = _relative_defect(hodge_star(omega_tilde, g) - omega_tilde,
                                 omega_tilde)
    if sd_defect > tol:
        raise NotOnTwistorFiber(
            f'form is not self-dual (defect {sd_defect:.3e})')
    return -np.linalg.solve(g, two_form_matrix(omega_tilde))


def metric_from_form(omega, J):
    r"""
    Metric :math:`g(X, Y) = \omega(X, JY)` of a compatible pair.
    """
    G = two_form_matrix(omega) @ J
    return 0.5 * (G + np.swapaxes(G, -1, -2))


def average_metric(g, J):
    r"""
    J-compatible average :math:`\frac{1}{2}(g + g(J\cdot, J\cdot))`.

    Parameters
    ----------
    g : (..., 4, 4) ndarray
        metric
    J : (..., 4, 4) ndarray
        almost complex structure

    Returns
    -------
    g_J : (..., 4, 4) ndarray
        J-compatible metric, equal to ``g`` if g is already compatible
    """
    g = np.asarray(g, dtype=float)
    g_J = 0.5 * (g + np.swapaxes(J, -1, -2) @ g @ J)
    return check_metric(0.5 * (g_J + np.swapaxes(g_J, -1, -2)))


def tames(omega, J):
    r"""
    Smallest eigenvalue of the symmetric part of :math:`\omega(\cdot,
    J\cdot)`.

    A positive value at every point means ``omega`` tames ``J``.
    """
    G = two_form_matrix(omega) @ J
    return np.linalg.eigvalsh(0.5 * (G + np.swapaxes(G, -1, -2)))[..., 0]


def _orthonormal(vectors, g, target=2.0):
    basis = []
    for v in vectors:
        w = np.array(v, dtype=float)
        for b in basis:
            w = w - inner(w, b, g) / target * b
        n2 = inner(w, w, g)
        if n2 > 1e-12:
            basis.append(w * np.sqrt(target / n2))
    return basis


def split_basis(g, J):
    r"""
    Orthogonal basis adapted to :math:`\Lambda^+_g = \mathrm{span}(\omega)
    \oplus \Lambda^-_J` and :math:`\Lambda^-_g`.

    Parameters
    ----------
    g : (4, 4) ndarray
        metric
    J : (4, 4) ndarray
        compatible almost complex structure

    Returns
    -------
    basis : SplitBasis
    """
    omega = fundamental_form(g, J)
    candidates = np.eye(6)
    self_dual = [project_self_dual(c, g) for c in candidates]
    anti_self_dual = [c - s for c, s in zip(candidates, self_dual)]
    minus = _orthonormal([omega] + self_dual, g)[1:3]
    asd = _orthonormal(anti_self_dual, g)[:3]
    return SplitBasis(omega, minus, asd)
