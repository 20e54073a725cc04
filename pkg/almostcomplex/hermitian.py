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
Hermitian geometry of almost Hermitian pairs on the torus grid.

Connection and curvature come from spectral derivatives of the metric.
Tensors are stored with the grid axes first and the tensor indices last,
the layout of :mod:`almostcomplex.pointwise`. ``Gamma[..., i, j, k]`` is
the k-th component of :math:`\nabla_{\partial_i}\partial_j` and
``riemann[..., i, j, k, l]`` is :math:`g(R(\partial_i, \partial_j)
\partial_k, \partial_l)` with :math:`R(X, Y) = [\nabla_X, \nabla_Y] -
\nabla_{[X, Y]}`.
"""

import logging
from collections import namedtuple

import numpy as np
import scipy.sparse.linalg as splinalg
from scipy.optimize import newton_krylov, NoConvergence

from . import pointwise
from .anti_invariant import anti_invariant_frame
from .calculus import ext_d, codiff, wedge, l2_norm
from .exceptions import SolverDivergence, DimensionMismatch
from .fields import FormField, MetricField

__all__ = [
    'ConnectionField', 'CurvatureData', 'LocalFrameData', 'lee_form',
    'gauduchon_residual', 'gauduchon_gauge', 'ConstancyReport',
    'constancy_check', 'nijenhuis_field', 'signature_constraint',
    'levi_civita', 'curvature', 'local_frame', 'well_balanced_residuals',
    'hermitian_weyl_residual', 'weitzenbock_residual',
    'nabla_omega_residual', 'j_beta_closure',
]

_logger = logging.getLogger(__name__)

ConstancyReport = namedtuple('ConstancyReport',
                             ['trace', 'deviation', 'gauduchon'])

_SQRT_HALF = np.sqrt(0.5)
# orthonormal bases of the self-dual and anti-self-dual forms of an
# oriented orthonormal coframe, columns in the pair basis
_SELF_DUAL = _SQRT_HALF * np.array([[1, 0, 0, 0, 0, 1],
                                    [0, 1, 0, 0, -1, 0],
                                    [0, 0, 1, 1, 0, 0]], dtype=float).T
_ANTI_SELF_DUAL = _SQRT_HALF * np.array([[1, 0, 0, 0, 0, -1],
                                         [0, 1, 0, 0, 1, 0],
                                         [0, 0, 1, -1, 0, 0]],
                                        dtype=float).T


def _grid_gradient(chart, values, rank):
    # derivative of a tensor field with `rank` trailing indices,
    # derivative index inserted right after the grid axes
    moved = np.moveaxis(values, tuple(range(4, 4 + rank)), tuple(range(rank)))
    grads = chart.gradient(moved)
    return np.moveaxis(grads, tuple(range(rank + 1)),
                       tuple(range(4, 5 + rank)))


def _antisymmetric(three_form):
    # components (4, N, N, N, N) of a 3-form to a (N, N, N, N, 4, 4, 4) tensor
    comps = three_form.components
    T = np.zeros(three_form.chart.shape + (4, 4, 4))
    for n, (a, b, c) in enumerate(three_form.indices):
        for (x, y, z), sign in (((a, b, c), 1), ((b, c, a), 1),
                                ((c, a, b), 1), ((b, a, c), -1),
                                ((a, c, b), -1), ((c, b, a), -1)):
            T[..., x, y, z] = sign * comps[n]
    return T


def _one_form_norm(g, a, b=None):
    b = a if b is None else b
    return np.einsum('...ij,...i,...j->...', g.inverse, a, b)


class ConnectionField:
    """
    Levi-Civita connection of a `MetricField`.

    Parameters
    ----------
    g : MetricField
    gamma : (N, N, N, N, 4, 4, 4) ndarray
        Christoffel symbols, see the module notes for the index order
    """

    def __init__(self, g, gamma):
        self.g = g
        self.chart = g.chart
        self.gamma = gamma

    def compatibility_residual(self):
        r"""Largest component of :math:`\nabla g`."""
        dg = _grid_gradient(self.chart, self.g.values, 2)
        G = self.g.values
        nabla_g = (dg - np.einsum('...ijl,...lk->...ijk', self.gamma, G)
                   - np.einsum('...ikl,...jl->...ijk', self.gamma, G))
        return float(np.max(np.abs(nabla_g)))

    def symmetry_residual(self):
        """Largest antisymmetric part of the Christoffel symbols."""
        return float(np.max(np.abs(self.gamma
                                   - np.swapaxes(self.gamma, -3, -2))))

    def covariant_derivative(self, alpha):
        r"""
        Covariant derivative of a 2-form.

        Parameters
        ----------
        alpha : (N, N, N, N, 6) ndarray or FormField
            2-form, components last

        Returns
        -------
        nabla_alpha : (N, N, N, N, 4, 6) ndarray
            ``nabla_alpha[..., i, :]`` is :math:`\nabla_{\partial_i}\alpha`
        """
        if isinstance(alpha, FormField):
            alpha = alpha.pointwise()
        A = pointwise.two_form_matrix(alpha)
        dA = _grid_gradient(self.chart, A, 2)
        nabla = (dA - np.einsum('...ijl,...lk->...ijk', self.gamma, A)
                 - np.einsum('...ikl,...jl->...ijk', self.gamma, A))
        return pointwise.two_form_vector(nabla)


class CurvatureData:
    r"""
    Curvature of a metric on the grid.

    Attributes
    ----------
    riemann : (N, N, N, N, 4, 4, 4, 4) ndarray
        lowered Riemann tensor
    ricci : (N, N, N, N, 4, 4) ndarray
    scalar : (N, N, N, N) ndarray
    w_plus, w_minus : (N, N, N, N, 3, 3) ndarray
        self-dual and anti-self-dual Weyl operators in an oriented
        orthonormal frame
    frame : (N, N, N, N, 4, 4) ndarray
        orthonormal frame, ``frame[..., :, a]`` is the a-th vector

    Notes
    -----
    The curvature operator is normalized so that it is the identity on the
    round unit sphere. Its blocks on :math:`\Lambda^+` and
    :math:`\Lambda^-` are :math:`W^\pm + \frac{s}{12}`.
    """

    def __init__(self, connection, riemann, bianchi):
        self.connection = connection
        self.g = connection.g
        self.riemann = riemann
        self.bianchi = bianchi
        G = self.g.values
        R_up = np.einsum('...ijkm,...ml->...ijkl', riemann, self.g.inverse)
        self.ricci = np.einsum('...ijki->...jk', R_up)
        self.scalar = np.einsum('...jk,...jk->...', self.g.inverse, self.ricci)
        L = np.linalg.cholesky(G)
        self.frame = np.linalg.inv(np.swapaxes(L, -1, -2))
        E = self.frame
        rm = np.einsum('...ijkl,...ia,...jb,...kc,...ld->...abcd',
                       riemann, E, E, E, E, optimize=True)
        pairs = pointwise.PAIRS
        operator = np.empty(G.shape[:-2] + (6, 6))
        for p, (a, b) in enumerate(pairs):
            for q, (c, d) in enumerate(pairs):
                operator[..., p, q] = rm[..., a, b, d, c]
        operator = 0.5 * (operator + np.swapaxes(operator, -1, -2))
        self.operator = operator
        shift = (self.scalar / 12.0)[..., None, None] * np.eye(3)
        self.w_plus = _SELF_DUAL.T @ operator @ _SELF_DUAL - shift
        self.w_minus = _ANTI_SELF_DUAL.T @ operator @ _ANTI_SELF_DUAL - shift

    def frame_components(self, alpha):
        """Components of 2-forms in the orthonormal frame, ``(..., 6)``."""
        A = pointwise.two_form_matrix(alpha)
        E = self.frame
        extra = A.ndim - E.ndim
        E = E.reshape(E.shape[:4] + (1,) * extra + (4, 4))
        return pointwise.two_form_vector(np.swapaxes(E, -1, -2) @ A @ E)

    def weyl_form(self, alpha, beta=None):
        r"""Pointwise :math:`\langle W(\alpha), \beta\rangle_g`."""
        beta = alpha if beta is None else beta
        a = self.frame_components(alpha)
        b = self.frame_components(beta)
        extra = a.ndim - 5
        out = 0.0
        for basis, weyl in ((_SELF_DUAL, self.w_plus),
                            (_ANTI_SELF_DUAL, self.w_minus)):
            weyl = weyl.reshape(weyl.shape[:4] + (1,) * extra + (3, 3))
            out = out + np.einsum('...i,...ij,...j->...', a @ basis, weyl,
                                  b @ basis)
        return out

    def weyl_plus_form(self, alpha, beta=None):
        r"""Pointwise :math:`\langle W^+(\alpha), \beta\rangle_g`."""
        beta = alpha if beta is None else beta
        a = self.frame_components(alpha) @ _SELF_DUAL
        b = self.frame_components(beta) @ _SELF_DUAL
        return np.einsum('...i,...ij,...j->...', a, self.w_plus, b)


LocalFrameData = namedtuple('LocalFrameData',
                            ['phi', 'j_phi', 'a', 'b', 'c', 'residual'])


def _lefschetz(omega):
    # matrix of theta -> theta ^ omega, (N, N, N, N, 4, 4)
    chart = omega.chart
    columns = [wedge(FormField.constant(chart, 1, np.eye(4)[k]), omega)
               for k in range(4)]
    return np.stack([np.moveaxis(c.components, 0, -1) for c in columns],
                    axis=-1)


def lee_form(g, J, omega=None):
    r"""
    Lee form :math:`\theta`, the solution of :math:`d\omega =
    \theta\wedge\omega`.

    Wedging with a nondegenerate 2-form is invertible on 1-forms in
    dimension 4, so the equation is solved pointwise.

    Parameters
    ----------
    g : MetricField
    J : ACSField
    omega : {None, FormField}
        fundamental form, computed from (g, J) if None

    Returns
    -------
    theta : FormField
        1-form
    """
    omega = J.fundamental_form(g) if omega is None else omega
    d_omega = np.moveaxis(ext_d(omega).components, 0, -1)
    theta = np.linalg.solve(_lefschetz(omega), d_omega[..., None])[..., 0]
    return FormField.from_pointwise(g.chart, theta, degree=1)


def gauduchon_residual(g, J):
    r""":math:`L^2_g` norm of :math:`\delta^g\theta`."""
    return l2_norm(codiff(lee_form(g, J), g), g)


def gauduchon_gauge(g, J, tol=1e-10, maxiter=100):
    r"""
    Gauduchon metric in the conformal class of g.

    Solves :math:`\delta^{\tilde g}\theta_{\tilde g} = 0` for
    :math:`\tilde g = e^{2u}g` by Newton-Krylov iterations on the full
    nonlinear map, preconditioned with the flat Laplacian. u is normalized
    by :math:`\int e^{4u}\,dV_g = \mathrm{Vol}_g`.

    Parameters
    ----------
    g : MetricField
    J : ACSField
        g-compatible structure
    tol : float
        sup-norm tolerance of the nonlinear residual
    maxiter : int
        maximal number of Newton steps

    Returns
    -------
    u : FormField
        0-form
    g_gauduchon : MetricField

    Raises
    ------
    SolverDivergence
        if the Newton iteration does not converge
    """
    chart = g.chart
    density = g.sqrt_det * chart.cell_volume
    volume = float(np.sum(density))
    nyquist = ~chart.nyquist_free

    def residual(x):
        u = x.reshape(chart.shape)
        g_u = MetricField.conformal(chart, u, base=g)
        delta = codiff(lee_form(g_u, J), g_u).scalar
        scale = np.exp(4 * u)
        constraint = (np.sum(scale * density) - volume) / volume
        out = scale * delta + constraint + (u - chart.remove_nyquist(u))
        return out.ravel()

    symbol = np.ones_like(chart.k_squared)
    inner = (~nyquist) & (chart.k_squared > 0)
    symbol[inner] = 0.5 / chart.k_squared[inner]
    symbol[chart.k_squared_full == 0] = 0.25

    def precondition(v):
        return chart.apply_symbol(v.reshape(chart.shape), symbol).ravel()

    size = int(np.prod(chart.shape))
    M = splinalg.LinearOperator((size, size), matvec=precondition)
    try:
        x = newton_krylov(residual, np.zeros(size), inner_M=M, f_tol=tol,
                          maxiter=maxiter, method='lgmres')
    except (NoConvergence, ValueError) as err:
        raise SolverDivergence(f'Gauduchon gauge did not converge: {err}') \
            from err
    u = x.reshape(chart.shape)
    g_gauduchon = MetricField.conformal(chart, u, base=g)
    final = gauduchon_residual(g_gauduchon, J)
    _logger.info('Gauduchon gauge: residual %.3e', final)
    if final > 1e-8:
        _logger.warning('Gauduchon residual %.3e above 1e-8', final)
    return FormField(chart, 0, u), g_gauduchon


def constancy_check(psi, g, J, gauduchon_tol=1e-8):
    r"""
    Trace :math:`\langle\psi, \omega\rangle` of a harmonic self-dual form.

    On a Gauduchon metric the trace is constant.

    Parameters
    ----------
    psi : FormField
        harmonic self-dual 2-form
    g : MetricField
        Gauduchon metric
    J : ACSField
    gauduchon_tol : float
        largest accepted Gauduchon residual of g

    Returns
    -------
    report : ConstancyReport
        trace field, its largest deviation from the mean and whether the
        metric passed the Gauduchon check
    """
    omega = J.fundamental_form(g)
    trace = pointwise.inner(psi.pointwise(), omega.pointwise(), g.values)
    deviation = float(np.max(np.abs(trace - g.chart.mean(trace))))
    residual = gauduchon_residual(g, J)
    gauduchon = residual <= gauduchon_tol
    if not gauduchon:
        _logger.warning('metric is not Gauduchon (residual %.3e), the trace '
                        'need not be constant', residual)
    return ConstancyReport(FormField(g.chart, 0, trace), deviation,
                           gauduchon)


def nijenhuis_field(J, tol=1e-8):
    r"""
    Nijenhuis tensor of a structure on the grid.

    Uses :math:`N(X, Y) = \frac{1}{4}([JX, JY] - J[JX, Y] - J[X, JY] -
    [X, Y])`, the same normalization as
    :func:`almostcomplex.lie.nijenhuis_invariant`.

    Parameters
    ----------
    J : ACSField
    tol : float
        singular value threshold of the image rank

    Returns
    -------
    N : (N, N, N, N, 4, 4, 4) ndarray
        ``N[..., i, j, :]`` is the vector :math:`N(\partial_i, \partial_j)`
    rank : (N, N, N, N) ndarray of int
        dimension of the image, 0 or 2
    """
    Jv = J.values
    dJ = _grid_gradient(J.chart, Jv, 2)
    # dJ[..., l, k, j] = d_l J^k_j
    N = 0.25 * (np.einsum('...li,...lkj->...ijk', Jv, dJ)
                - np.einsum('...lj,...lki->...ijk', Jv, dJ)
                + np.einsum('...kl,...jli->...ijk', Jv, dJ)
                - np.einsum('...kl,...ilj->...ijk', Jv, dJ))
    stacked = N.reshape(N.shape[:4] + (16, 4))
    singular = np.linalg.svd(stacked, compute_uv=False)
    rank = np.sum(singular > tol, axis=-1)
    odd = np.isin(rank, (1, 3, 4))
    if np.any(odd):
        _logger.warning('Nijenhuis image of dimension %s at %d points',
                        sorted(set(rank[odd].tolist())), int(np.sum(odd)))
    return N, rank


def signature_constraint(chi, sigma):
    r"""
    Topological constraint :math:`5\chi + 6\sigma = 0`.

    Parameters
    ----------
    chi, sigma : int
        Euler characteristic and signature

    Returns
    -------
    holds : bool
    """
    if int(chi) != chi or int(sigma) != sigma:
        raise ValueError('Euler characteristic and signature are integers')
    return 5 * int(chi) + 6 * int(sigma) == 0


def levi_civita(g):
    r"""
    Levi-Civita connection of a metric on the grid.

    Parameters
    ----------
    g : MetricField

    Returns
    -------
    connection : ConnectionField
    """
    dg = _grid_gradient(g.chart, g.values, 2)
    # lowered[..., i, j, k] = g(nabla_i d_j, d_k)
    lowered = 0.5 * (dg + np.swapaxes(dg, -3, -2)
                     - np.moveaxis(dg, -3, -1))
    gamma = np.einsum('...ijl,...lk->...ijk', lowered, g.inverse)
    return ConnectionField(g, gamma)


def curvature(connection):
    """
    Riemann, Ricci and Weyl curvature of a connection.

    Parameters
    ----------
    connection : ConnectionField

    Returns
    -------
    curvature : CurvatureData
    """
    G = connection.gamma
    dG = _grid_gradient(connection.chart, G, 3)
    # dG[..., m, i, j, k] = d_m Gamma[i, j, k]
    R = (np.einsum('...ijkl->...ijkl', dG)
         - np.einsum('...jikl->...ijkl', dG)
         + np.einsum('...jkm,...iml->...ijkl', G, G)
         - np.einsum('...ikm,...jml->...ijkl', G, G))
    bianchi = float(np.max(np.abs(R + np.einsum('...jkil->...ijkl', R)
                                  + np.einsum('...kijl->...ijkl', R))))
    riemann = np.einsum('...ijkm,...ml->...ijkl', R, connection.g.values)
    return CurvatureData(connection, riemann, bianchi)


def local_frame(g, J, connection=None, phi=None):
    r"""
    Coefficients of :math:`\nabla\omega = a\otimes\varphi + b\otimes
    J\varphi` in a global frame of the anti-invariant forms.

    Parameters
    ----------
    g : MetricField
    J : ACSField
    connection : {None, ConnectionField}
    phi : {None, (N, N, N, N, 6) ndarray}
        anti-invariant form with :math:`|\varphi|^2 = 2`, the coordinate
        frame of :func:`anti_invariant_frame` if None

    Returns
    -------
    frame : LocalFrameData
        ``c`` is the connection form :math:`\langle\nabla\varphi,
        J\varphi\rangle / 2` and ``residual`` the part of
        :math:`\nabla\omega` outside the frame
    """
    connection = levi_civita(g) if connection is None else connection
    if phi is None:
        phi, j_phi = anti_invariant_frame(g, J)
    else:
        j_phi = pointwise.j_act(phi, J.values, tol=None)
    G = g.values[..., None, :, :]
    omega = J.fundamental_form(g).pointwise()
    nabla_omega = connection.covariant_derivative(omega)
    a = 0.5 * pointwise.inner(nabla_omega, phi[..., None, :], G)
    b = 0.5 * pointwise.inner(nabla_omega, j_phi[..., None, :], G)
    nabla_phi = connection.covariant_derivative(phi)
    c = 0.5 * pointwise.inner(nabla_phi, j_phi[..., None, :], G)
    rest = (nabla_omega - a[..., None] * phi[..., None, :]
            - b[..., None] * j_phi[..., None, :])
    return LocalFrameData(phi, j_phi, a, b, c, float(np.max(np.abs(rest))))


def _pair_defect(xx, yy, xy):
    return np.hypot(xx - yy, 2 * xy)


def well_balanced_residuals(g, J, connection=None, phi=None, tol=1e-8):
    r"""
    Defects of three equivalent well-balanced conditions.

    Parameters
    ----------
    g : MetricField
    J : ACSField
    connection : {None, ConnectionField}
    phi : {None, ndarray}
        frame form, see :func:`local_frame`
    tol : float
        threshold used to compare the three conditions

    Returns
    -------
    res_iii : float
        sup of the anti-invariant part of :math:`\iota_{N(X, Y)}d\omega`
    res_iv : float
        sup defect of :math:`|\nabla\varphi|^2 = |\nabla J\varphi|^2`,
        :math:`\langle\nabla\varphi, \nabla J\varphi\rangle = 0`
    res_v : float
        sup defect of :math:`|a|^2 = |b|^2`, :math:`\langle a, b\rangle = 0`

    Raises
    ------
    FrameDegenerate
        if no coordinate frame of the anti-invariant forms exists
    """
    connection = levi_civita(g) if connection is None else connection
    frame = local_frame(g, J, connection, phi)
    res_v = float(np.max(_pair_defect(_one_form_norm(g, frame.a),
                                      _one_form_norm(g, frame.b),
                                      _one_form_norm(g, frame.a, frame.b))))

    G = g.values[..., None, None, :, :]
    g_inv = g.inverse
    d_phi = connection.covariant_derivative(frame.phi)
    d_j_phi = connection.covariant_derivative(frame.j_phi)

    def contract(x, y):
        # g^{ij} <nabla_i x, nabla_j y>
        products = pointwise.inner(x[..., :, None, :], y[..., None, :, :], G)
        return np.einsum('...ij,...ij->...', g_inv, products)

    res_iv = 0.5 * float(np.max(_pair_defect(contract(d_phi, d_phi),
                                             contract(d_j_phi, d_j_phi),
                                             contract(d_phi, d_j_phi))))

    N, _ = nijenhuis_field(J)
    d_omega = _antisymmetric(ext_d(J.fundamental_form(g)))
    contracted = np.einsum('...ijc,...cab->...ijab', N, d_omega)
    _, anti = pointwise.split_J(pointwise.two_form_vector(contracted),
                                J.values[..., None, None, :, :])
    res_iii = float(np.max(np.abs(anti)))

    vanishing = [r <= tol for r in (res_iii, res_iv, res_v)]
    if any(vanishing) and not all(vanishing):
        _logger.warning('well-balanced conditions disagree: %.3e %.3e %.3e',
                        res_iii, res_iv, res_v)
    return res_iii, res_iv, res_v


def hermitian_weyl_residual(g, J, curv=None):
    r"""
    Defect of :math:`\langle W^+(J\beta), J\beta\rangle =
    \langle W^+(\beta), \beta\rangle` for all anti-invariant :math:`\beta`.

    Parameters
    ----------
    g : MetricField
    J : ACSField
    curv : {None, CurvatureData}

    Returns
    -------
    residual : float
        sup over the grid
    """
    curv = curvature(levi_civita(g)) if curv is None else curv
    phi, j_phi = anti_invariant_frame(g, J)
    defect = _pair_defect(curv.weyl_plus_form(j_phi),
                          curv.weyl_plus_form(phi),
                          curv.weyl_plus_form(phi, j_phi))
    return float(np.max(defect))


def weitzenbock_residual(psi, g, curv=None, relative=True):
    r"""
    Defect of the integrated Weitzenböck formula for 2-forms,

    .. math:: \int |d\psi|^2 + |\delta\psi|^2 - |\nabla\psi|^2\,dV =
        \int \frac{s}{3}|\psi|^2 - 2\langle W(\psi), \psi\rangle\,dV

    with the Weyl operator normalized as in `CurvatureData`.

    Parameters
    ----------
    psi : FormField
        2-form
    g : MetricField
    curv : {None, CurvatureData}
    relative : bool
        divide by the size of the integrated terms

    Returns
    -------
    residual : float
    """
    if psi.degree != 2:
        raise DimensionMismatch('Weitzenböck check needs a 2-form')
    curv = curvature(levi_civita(g)) if curv is None else curv
    chart = g.chart

    def integral(density):
        return float(chart.integrate(density * g.sqrt_det))

    values = psi.pointwise()
    energy = l2_norm(ext_d(psi), g) ** 2 + l2_norm(codiff(psi, g), g) ** 2
    nabla = curv.connection.covariant_derivative(values)
    products = pointwise.inner(nabla[..., :, None, :], nabla[..., None, :, :],
                               g.values[..., None, None, :, :])
    gradient = integral(np.einsum('...ij,...ij->...', g.inverse, products))
    norm2 = pointwise.norm2(values, g.values)
    rhs = integral(curv.scalar / 3 * norm2 - 2 * curv.weyl_form(values))
    defect = abs(energy - gradient - rhs)
    scale = energy + gradient
    if relative and scale > 0:
        return defect / scale
    return defect


def nabla_omega_residual(g, J, connection=None):
    r"""
    Defect of :math:`(\nabla_X\omega)(Y, Z) = 2g(N(Y, Z), JX) +
    ((JX)^\flat\wedge\theta)''(Y, Z)` over coordinate vectors.

    Returns
    -------
    residual : float
        sup over the grid
    """
    connection = levi_civita(g) if connection is None else connection
    omega = J.fundamental_form(g)
    nabla = pointwise.two_form_matrix(
        connection.covariant_derivative(omega))
    N, _ = nijenhuis_field(J)
    theta = lee_form(g, J, omega).pointwise()
    worst = 0.0
    for x in range(4):
        JX = J.values[..., :, x]
        flat = np.einsum('...ij,...j->...i', g.values, JX)
        product = flat[..., :, None] * theta[..., None, :] \
            - theta[..., :, None] * flat[..., None, :]
        _, anti = pointwise.split_J(pointwise.two_form_vector(product),
                                    J.values)
        rhs = 2 * np.einsum('...yzk,...kl,...l->...yz', N, g.values, JX) \
            + pointwise.two_form_matrix(anti)
        worst = max(worst, float(np.max(np.abs(nabla[..., x, :, :] - rhs))))
    return worst


def j_beta_closure(beta, J):
    r"""
    Sup norm of :math:`d(J\beta)` for an anti-invariant 2-form.

    Parameters
    ----------
    beta : FormField
        closed J-anti-invariant 2-form, e.g. a kernel element of
        :class:`almostcomplex.anti_invariant.LejmiEigensolver`
    J : ACSField

    Returns
    -------
    defect : float
    """
    j_beta = pointwise.j_act(beta.pointwise(), J.values, tol=1e-6)
    return ext_d(FormField.from_pointwise(beta.chart, j_beta)).sup_norm()
