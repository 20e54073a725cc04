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
Riemannian geometry of left-invariant metrics.

Invariant tensors have constant coefficients in the basis :math:`e_i`, so
every derivative reduces to the brackets of the model.
"""

import itertools

import numpy as _np

from .. import pointwise
from ..exceptions import IncompatiblePair
from ._model import nijenhuis_invariant

__all__ = ['invariant_levi_civita', 'invariant_nabla_omega',
           'invariant_lee_form', 'invariant_well_balanced',
           'invariant_nabla_omega_residual']


def invariant_levi_civita(model, g=None):
    r"""
    Levi-Civita connection of an invariant metric from the Koszul formula.

    :math:`g(\nabla_X Y, Z) = \frac{1}{2}(g([X, Y], Z) - g([Y, Z], X) +
    g([Z, X], Y))` for invariant vector fields.

    Parameters
    ----------
    model : LieAlgebraModel
    g : {None, (4, 4) array_like}
        inner product, Euclidean if None

    Returns
    -------
    Gamma : (4, 4, 4) ndarray
        ``Gamma[i, j, k]`` is the k-th component of :math:`\nabla_{e_i} e_j`
    """
    g = _np.eye(4) if g is None else _np.asarray(g, dtype=float)
    pointwise.check_metric(g)
    C = model.numeric_brackets
    # lowered[i, j, k] = g([e_i, e_j], e_k)
    lowered = _np.einsum('ijl,lk->ijk', C, g)
    koszul = 0.5 * (lowered - _np.einsum('jki->ijk', lowered)
                    + _np.einsum('kij->ijk', lowered))
    return _np.einsum('ijl,lk->ijk', koszul, _np.linalg.inv(g))


def invariant_nabla_omega(model, J, g=None):
    r"""
    Covariant derivative of the fundamental form.

    Returns
    -------
    nabla_omega : (4, 4, 4) ndarray
        ``nabla_omega[i]`` is the matrix of :math:`\nabla_{e_i}\omega`
    """
    g = _np.eye(4) if g is None else _np.asarray(g, dtype=float)
    Omega = pointwise.two_form_matrix(pointwise.fundamental_form(g, J.values))
    Gamma = invariant_levi_civita(model, g)
    return -(_np.einsum('ijl,lk->ijk', Gamma, Omega)
             + _np.einsum('ikl,jl->ijk', Gamma, Omega))


def _three_form(model, omega):
    # d of an invariant 2-form as an antisymmetric (4, 4, 4) array
    D2 = _np.array(model.ce_matrix(2).tolist(), dtype=float)
    coefficients = D2 @ omega
    T = _np.zeros((4, 4, 4))
    for c, (a, b, e) in zip(coefficients,
                            itertools.combinations(range(4), 3)):
        for perm in itertools.permutations(range(3)):
            idx = tuple((a, b, e)[p] for p in perm)
            inversions = sum(1 for x in range(3) for y in range(x + 1, 3)
                             if perm[x] > perm[y])
            T[idx] = (-1) ** inversions * c
    return T


def invariant_lee_form(model, J, g=None, tol=1e-10):
    r"""
    Lee form of an invariant almost Hermitian structure.

    Solves :math:`d\omega = \theta\wedge\omega`, which has a unique solution
    in dimension 4.

    Returns
    -------
    theta : (4,) ndarray
        components :math:`\theta(e_i)`
    """
    g = _np.eye(4) if g is None else _np.asarray(g, dtype=float)
    omega = pointwise.fundamental_form(g, J.values)
    d_omega = _three_form(model, omega)
    Omega = pointwise.two_form_matrix(omega)
    # (theta ^ omega)_{abc} = theta_a O_bc - theta_b O_ac + theta_c O_ab
    system = _np.zeros((64, 4))
    for a in range(4):
        for b in range(4):
            for c in range(4):
                row = 16 * a + 4 * b + c
                system[row, a] += Omega[b, c]
                system[row, b] -= Omega[a, c]
                system[row, c] += Omega[a, b]
    theta, *_ = _np.linalg.lstsq(system, d_omega.ravel(), rcond=None)
    defect = float(_np.max(_np.abs(system @ theta - d_omega.ravel())))
    if defect > tol:
        raise IncompatiblePair(
            f'd omega = theta ^ omega has no solution (defect {defect:.3e})')
    return theta


def _frame(g, J):
    basis = pointwise.split_basis(g, J.values)
    phi = basis.minus_basis[0]
    return phi, pointwise.j_act(phi, J.values)


def _pair_norms(x, y, g_inv_form):
    # |x|^2 - |y|^2 and 2 <x, y> for 1-form valued data
    xx = _np.einsum('i,ij,j->', x, g_inv_form, x)
    yy = _np.einsum('i,ij,j->', y, g_inv_form, y)
    xy = _np.einsum('i,ij,j->', x, g_inv_form, y)
    return float(_np.hypot(xx - yy, 2 * xy))


def invariant_well_balanced(model, J, g=None):
    r"""
    Defects of three equivalent well-balanced conditions.

    Parameters
    ----------
    model : LieAlgebraModel
    J : InvariantACS
    g : {None, (4, 4) array_like}
        J-compatible inner product

    Returns
    -------
    res_iii : float
        largest anti-invariant part of :math:`\iota_{N(e_i, e_j)}d\omega`
    res_iv : float
        defect of :math:`|\nabla\varphi|^2 = |\nabla J\varphi|^2`,
        :math:`\langle\nabla\varphi, \nabla J\varphi\rangle = 0`
    res_v : float
        defect of :math:`|a|^2 = |b|^2`, :math:`\langle a, b\rangle = 0`
        for :math:`\nabla\omega = a\otimes\varphi + b\otimes J\varphi`
    """
    g = _np.eye(4) if g is None else _np.asarray(g, dtype=float)
    g_inv = _np.linalg.inv(g)
    omega = pointwise.fundamental_form(g, J.values)
    phi, j_phi = _frame(g, J)
    nabla = invariant_nabla_omega(model, J, g)
    nabla_vec = pointwise.two_form_vector(nabla)
    a = 0.5 * pointwise.inner(nabla_vec, phi, g)
    b = 0.5 * pointwise.inner(nabla_vec, j_phi, g)
    res_v = _pair_norms(a, b, g_inv)

    Gamma = invariant_levi_civita(model, g)

    def nabla_form(form):
        F = pointwise.two_form_matrix(form)
        return pointwise.two_form_vector(
            -(_np.einsum('ijl,lk->ijk', Gamma, F)
              + _np.einsum('ikl,jl->ijk', Gamma, F)))

    d_phi = nabla_form(phi)
    d_j_phi = nabla_form(j_phi)
    pp = sum(g_inv[i, j] * pointwise.inner(d_phi[i], d_phi[j], g)
             for i in range(4) for j in range(4))
    qq = sum(g_inv[i, j] * pointwise.inner(d_j_phi[i], d_j_phi[j], g)
             for i in range(4) for j in range(4))
    pq = sum(g_inv[i, j] * pointwise.inner(d_phi[i], d_j_phi[j], g)
             for i in range(4) for j in range(4))
    res_iv = 0.5 * float(_np.hypot(pp - qq, 2 * pq))

    N, _ = nijenhuis_invariant(model, J)
    d_omega = _three_form(model, omega)
    res_iii = 0.0
    for i in range(4):
        for j in range(i + 1, 4):
            contracted = _np.einsum('c,cab->ab', N[i, j], d_omega)
            _, anti = pointwise.split_J(pointwise.two_form_vector(contracted),
                                        J.values)
            res_iii = max(res_iii, float(_np.max(_np.abs(anti))))
    return res_iii, res_iv, res_v


def invariant_nabla_omega_residual(model, J, g=None):
    r"""
    Defect of :math:`(\nabla_X\omega)(Y, Z) = 2g(N(Y, Z), JX) +
    ((JX)^\flat\wedge\theta)''(Y, Z)` over basis vectors.

    Returns
    -------
    residual : float
        largest absolute defect
    """
    g = _np.eye(4) if g is None else _np.asarray(g, dtype=float)
    nabla = invariant_nabla_omega(model, J, g)
    N, _ = nijenhuis_invariant(model, J)
    theta = invariant_lee_form(model, J, g)
    Jm = J.values
    worst = 0.0
    for x in range(4):
        JX = Jm[:, x]
        flat = g @ JX
        wedge = _np.outer(flat, theta) - _np.outer(theta, flat)
        _, anti = pointwise.split_J(pointwise.two_form_vector(wedge), Jm)
        rhs = 2 * _np.einsum('yzk,kl,l->yz', N, g, JX) \
            + pointwise.two_form_matrix(anti)
        worst = max(worst, float(_np.max(_np.abs(nabla[x] - rhs))))
    return worst
