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
Exterior calculus of `FormField` objects.

The exterior derivative is spectral, the Hodge star and the codifferential
act pointwise in real space. The discrete :math:`L^2` product

.. math:: \langle\alpha, \beta\rangle_{L^2} = \sum_{x}\langle\alpha(x),
    \beta(x)\rangle_g \sqrt{\det g(x)}\,\Delta V

makes `codiff` the exact adjoint of `ext_d`, which the elliptic solves of
`hodge_decompose` and `harmonic_basis` rely on.
"""

import logging
from math import comb

import numpy as np
import scipy.sparse.linalg as splinalg

from .exceptions import DegreeOverflow, DimensionMismatch, SolverDivergence
from .fields import FormField, MetricField, form_indices

__all__ = [
    'ext_d', 'star', 'codiff', 'wedge', 'hodge_laplacian', 'pointwise_inner',
    'l2_inner', 'l2_norm', 'exact_potential', 'hodge_decompose',
    'HarmonicBasis', 'harmonic_basis', 'sd_harmonic_basis', 'betti_numbers',
]

_logger = logging.getLogger(__name__)

SOLVER_TOL = 1e-10
SOLVER_MAXITER = 500


def _permutation_sign(sequence):
    sequence = list(sequence)
    inversions = sum(1 for i in range(len(sequence))
                     for j in range(i + 1, len(sequence))
                     if sequence[i] > sequence[j])
    return -1.0 if inversions % 2 else 1.0


def ext_d(field):
    r"""
    Exterior derivative.

    Parameters
    ----------
    field : FormField
        p-form with p <= 3

    Returns
    -------
    d_field : FormField
        (p+1)-form, :math:`(d\alpha)_{i_0\ldots i_p} = \sum_k (-1)^k
        \partial_{i_k}\alpha_{i_0\ldots\hat{i_k}\ldots i_p}`
    """
    p = field.degree
    if p >= 4:
        raise DegreeOverflow('d of a 4-form')
    chart = field.chart
    grads = chart.gradient(field.components)
    source = {idx: n for n, idx in enumerate(field.indices)}
    out_indices = form_indices(p + 1)
    out = np.zeros((len(out_indices),) + chart.shape)
    for n, idx in enumerate(out_indices):
        for k, axis in enumerate(idx):
            rest = idx[:k] + idx[k + 1:]
            out[n] += (-1) ** k * grads[axis, source[rest]]
    return FormField(chart, p + 1, out)


def _raise(field, g):
    # components of the form with indices raised by g
    if g is None or g.is_identity:
        return field.components
    return np.einsum('wxyzik,kwxyz->iwxyz', g.compound(field.degree),
                     field.components)


def _weight(field, g):
    # pointwise L2 weight applied to the components
    if g is None or g.is_identity:
        return field.components
    return np.einsum('wxyzik,kwxyz->iwxyz', g.mass(field.degree),
                     field.components)


def star(field, g=None):
    r"""
    Hodge star of a form of any degree.

    :math:`*e^I = \sqrt{\det g}\,\mathrm{sgn}(I, I^c)\,(g^{-1})^{I}
    e^{I^c}` with the compound inverse metric raising the multi-index.

    Parameters
    ----------
    field : FormField
    g : {None, MetricField}
        flat metric if None

    Returns
    -------
    star_field : FormField
        (4-p)-form
    """
    p = field.degree
    raised = _raise(field, g)
    if g is not None and not g.is_identity:
        raised = raised * g.sqrt_det
    target = {idx: n for n, idx in enumerate(form_indices(4 - p))}
    out = np.zeros((comb(4, 4 - p),) + field.chart.shape)
    for n, idx in enumerate(field.indices):
        complement = tuple(a for a in range(4) if a not in idx)
        out[target[complement]] += _permutation_sign(idx + complement) \
            * raised[n]
    return FormField(field.chart, 4 - p, out)


def codiff(field, g=None):
    r"""
    Codifferential :math:`\delta = -*d*`, the :math:`L^2_g` adjoint of d.

    Parameters
    ----------
    field : FormField
        p-form with p >= 1
    g : {None, MetricField}
        metric, flat if None

    Returns
    -------
    delta_field : FormField
        (p-1)-form
    """
    if field.degree == 0:
        raise DegreeOverflow('codifferential of a 0-form')
    return -star(ext_d(star(field, g)), g)


def hodge_laplacian(field, g=None):
    r"""Hodge Laplacian :math:`d\delta + \delta d`."""
    out = FormField.zeros(field.chart, field.degree)
    if field.degree > 0:
        out = out + ext_d(codiff(field, g))
    if field.degree < 4:
        out = out + codiff(ext_d(field), g)
    return out


def wedge(alpha, beta):
    """
    Exterior product.

    Parameters
    ----------
    alpha : FormField
    beta : FormField
        forms on the same chart with total degree <= 4

    Returns
    -------
    product : FormField
    """
    p, q = alpha.degree, beta.degree
    if p + q > 4:
        raise DegreeOverflow(f'wedge of degrees {p} and {q}')
    if alpha.chart != beta.chart:
        raise DimensionMismatch('forms live on different charts')
    target = {idx: n for n, idx in enumerate(form_indices(p + q))}
    out = np.zeros((comb(4, p + q),) + alpha.chart.shape)
    for a, I in enumerate(alpha.indices):
        for b, K in enumerate(beta.indices):
            if set(I) & set(K):
                continue
            merged = tuple(sorted(I + K))
            out[target[merged]] += _permutation_sign(I + K) \
                * alpha.components[a] * beta.components[b]
    return FormField(alpha.chart, p + q, out)


def pointwise_inner(alpha, beta, g=None):
    r"""
    Pointwise inner product :math:`\langle\alpha, \beta\rangle_g`.

    Returns
    -------
    product : (N, N, N, N) ndarray
    """
    if alpha.degree != beta.degree:
        raise DimensionMismatch('inner product of forms of different degree')
    return np.sum(_raise(alpha, g) * beta.components, axis=0)


def l2_inner(alpha, beta, g=None):
    """Discrete :math:`L^2_g` inner product."""
    if alpha.degree != beta.degree:
        raise DimensionMismatch('inner product of forms of different degree')
    density = np.sum(_weight(alpha, g) * beta.components, axis=0)
    return float(alpha.chart.integrate(density))


def l2_norm(alpha, g=None):
    """Discrete :math:`L^2_g` norm."""
    return float(np.sqrt(max(l2_inner(alpha, alpha, g), 0.0)))


def _flat_codiff(components, chart, degree):
    return codiff(FormField(chart, degree, components)).components


def exact_potential(alpha, g=None, tol=SOLVER_TOL, maxiter=SOLVER_MAXITER):
    r"""
    Potential of the exact part of a form.

    Solves the normal equations :math:`d^T W d A = d^T W \alpha` with the
    pointwise weight W of the :math:`L^2_g` product by preconditioned
    conjugate gradients. For the flat metric :math:`d^T = \delta` and the
    flat inverse Laplacian is an exact preconditioner.

    Parameters
    ----------
    alpha : FormField
        p-form with p >= 1
    g : {None, MetricField}
        metric, flat if None
    tol : float
        relative residual of the conjugate gradient iteration
    maxiter : int
        maximum number of iterations

    Returns
    -------
    potential : FormField
        (p-1)-form A with dA the L2_g-orthogonal projection of alpha onto
        exact forms
    """
    p = alpha.degree
    if p == 0:
        raise DegreeOverflow('0-forms have no exact part')
    chart = alpha.chart
    q = p - 1
    shape = (comb(4, q),) + chart.shape
    size = int(np.prod(shape))

    def normal(components):
        d_form = ext_d(FormField(chart, q, components))
        return _flat_codiff(_weight(d_form, g), chart, p)

    def matvec(x):
        return normal(x.reshape(shape)).ravel()

    def precondition(x):
        return chart.inverse_laplacian(x.reshape(shape)).ravel()

    rhs = _flat_codiff(_weight(alpha, g), chart, p).ravel()
    rhs_norm = float(np.linalg.norm(rhs))
    if rhs_norm == 0.0:
        return FormField.zeros(chart, q)
    operator = splinalg.LinearOperator((size, size), matvec=matvec)
    preconditioner = splinalg.LinearOperator((size, size),
                                             matvec=precondition)
    scale = max(rhs_norm, float(np.linalg.norm(alpha.components)))
    n_iter = [0]

    def count(_):
        n_iter[0] += 1

    solution, info = splinalg.cg(operator, rhs, rtol=tol, atol=tol * scale,
                                 maxiter=maxiter, M=preconditioner,
                                 callback=count)
    if info != 0:
        raise SolverDivergence(
            f'conjugate gradients did not converge in {maxiter} iterations')
    _logger.debug('exact potential of a %d-form: %d CG iterations', p,
                  n_iter[0])
    return FormField(chart, q, solution.reshape(shape))


def hodge_decompose(alpha, g=None, tol=SOLVER_TOL, maxiter=SOLVER_MAXITER):
    r"""
    Hodge decomposition of a form.

    Parameters
    ----------
    alpha : FormField
        form of degree 1, 2 or 3
    g : {None, MetricField}
        metric, flat if None
    tol : float
        solver tolerance
    maxiter : int
        solver iteration limit

    Returns
    -------
    harm : FormField
        harmonic part
    exact : FormField
        exact part :math:`dA`
    coexact : FormField
        coexact part :math:`\delta B`

    Notes
    -----
    The coexact part is the Hodge dual of the exact part of
    :math:`*\alpha`, the harmonic part is the remainder.
    """
    p = alpha.degree
    if p in (0, 4):
        raise DegreeOverflow('decomposition needs degree 1, 2 or 3')
    exact = ext_d(exact_potential(alpha, g, tol, maxiter))
    dual = star(alpha, g)
    dual_exact = ext_d(exact_potential(dual, g, tol, maxiter))
    # ** = (-1)^{p(4-p)} on p-forms
    coexact = star(dual_exact, g) * (-1.0) ** (p * (4 - p))
    harm = alpha - exact - coexact
    return harm, exact, coexact


class HarmonicBasis:
    """
    L2-orthonormal basis of harmonic forms of one degree.

    Parameters
    ----------
    degree : int
        form degree
    basis : list of FormField
        harmonic forms
    gram : ndarray
        L2 Gram matrix of ``basis``
    intersection : {None, ndarray}
        cup product pairing :math:`\\int h_i\\wedge h_j`, for degree 2
    """

    def __init__(self, degree, basis, gram, intersection=None):
        self.degree = degree
        self.basis = list(basis)
        self.gram = np.asarray(gram)
        self.intersection = (None if intersection is None
                             else np.asarray(intersection))

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __getitem__(self, item):
        return self.basis[item]

    def rank(self, tol=1e-8):
        """Numerical rank of the Gram matrix."""
        eigenvalues = np.linalg.eigvalsh(self.gram)
        scale = max(1.0, float(np.max(np.abs(eigenvalues))))
        return int(np.sum(eigenvalues > tol * scale))

    def signature(self, tol=1e-8):
        """Numbers of positive and negative eigenvalues of the pairing."""
        if self.intersection is None:
            raise DegreeOverflow('intersection pairing needs degree 2')
        eigenvalues = np.linalg.eigvalsh(self.intersection)
        scale = max(1.0, float(np.max(np.abs(eigenvalues))))
        return (int(np.sum(eigenvalues > tol * scale)),
                int(np.sum(eigenvalues < -tol * scale)))

    @property
    def b_plus(self):
        return self.signature()[0]

    @property
    def b_minus(self):
        return self.signature()[1]


def harmonic_basis(g=None, degree=2, chart=None, tol=SOLVER_TOL,
                   maxiter=SOLVER_MAXITER):
    r"""
    Harmonic forms of a metric on the torus.

    Every cohomology class of the torus is represented by a constant form
    :math:`e^I`; its harmonic representative is :math:`e^I - dA_I` with the
    exact part computed by `exact_potential`. The representatives are
    orthonormalized with the symmetric (Loewdin) transformation, which
    leaves the constant basis of the flat metric unchanged on the unit
    torus.

    Parameters
    ----------
    g : {None, MetricField}
        metric, flat if None
    degree : int
        form degree, 1..3
    chart : {None, GridChart}
        grid, required only if ``g`` is None
    tol, maxiter
        solver settings

    Returns
    -------
    basis : HarmonicBasis
    """
    if degree not in (1, 2, 3):
        raise DegreeOverflow(f'harmonic basis of degree {degree}')
    if g is None and chart is None:
        raise ValueError('need a metric or a chart')
    chart = g.chart if g is not None else chart
    raw = []
    for n in range(comb(4, degree)):
        constant = FormField.constant(chart, degree, np.eye(comb(4, degree))[n])
        raw.append(constant - ext_d(exact_potential(constant, g, tol,
                                                    maxiter)))
    gram_raw = np.array([[l2_inner(a, b, g) for b in raw] for a in raw])
    eigenvalues, vectors = np.linalg.eigh(gram_raw)
    rank = int(np.sum(eigenvalues > 1e-8 * eigenvalues.max()))
    if rank != len(raw):
        raise DimensionMismatch(
            f'harmonic space of dimension {rank}, expected {len(raw)}')
    transform = vectors @ np.diag(eigenvalues ** -0.5) @ vectors.T
    basis = []
    for k in range(len(raw)):
        combo = FormField.zeros(chart, degree)
        for n, form in enumerate(raw):
            combo = combo + form * transform[n, k]
        basis.append(combo)
    gram = np.array([[l2_inner(a, b, g) for b in basis] for a in basis])
    intersection = None
    if degree == 2:
        intersection = np.array([[chart.integrate(wedge(a, b).scalar)
                                  for b in basis] for a in basis])
    result = HarmonicBasis(degree, basis, gram, intersection)
    if degree == 2 and result.signature() != (3, 3):
        raise DimensionMismatch(
            f'intersection form of signature {result.signature()}')
    return result


def sd_harmonic_basis(g=None, chart=None, tol=SOLVER_TOL,
                      maxiter=SOLVER_MAXITER):
    """
    L2-orthonormal basis of the harmonic self-dual 2-forms.

    Parameters
    ----------
    g : {None, MetricField}
        metric, flat if None
    chart : {None, GridChart}
        grid, required only if ``g`` is None

    Returns
    -------
    basis : list of FormField
        three closed self-dual forms
    """
    harmonic = harmonic_basis(g, 2, chart, tol, maxiter)
    dual = [star(h, g) for h in harmonic]
    pairing = np.array([[l2_inner(s, h, g) for h in harmonic] for s in dual])
    eigenvalues, vectors = np.linalg.eigh(0.5 * (pairing + pairing.T))
    positive = vectors[:, eigenvalues > 0.5]
    if positive.shape[1] != 3:
        raise DimensionMismatch(
            f'{positive.shape[1]} self-dual harmonic forms, expected 3')
    basis = []
    for column in positive.T:
        combo = FormField.zeros(harmonic[0].chart, 2)
        for coefficient, form in zip(column, harmonic):
            combo = combo + form * coefficient
        # solver residue leaves an anti-self-dual part
        basis.append((combo + star(combo, g)) * 0.5)
    gram = np.array([[l2_inner(a, b, g) for b in basis] for a in basis])
    eigenvalues, vectors = np.linalg.eigh(gram)
    transform = vectors @ np.diag(eigenvalues ** -0.5) @ vectors.T
    orthonormal = []
    for k in range(len(basis)):
        combo = FormField.zeros(harmonic[0].chart, 2)
        for n, form in enumerate(basis):
            combo = combo + form * transform[n, k]
        orthonormal.append(combo)
    return orthonormal


def betti_numbers(g=None, chart=None):
    """
    Betti numbers of the torus read off the computed harmonic spaces.

    ``b1`` .. ``b3`` are the numerical ranks of the L2 Gram matrices of the
    harmonic representatives, ``b_plus`` and ``b_minus`` the signature of
    the intersection pairing.

    Returns
    -------
    betti : dict
        ``b0`` .. ``b4``, ``b_plus`` and ``b_minus``
    """
    betti = {'b0': 1, 'b4': 1}
    for degree in (1, 2, 3):
        basis = harmonic_basis(g, degree, chart)
        betti[f'b{degree}'] = basis.rank()
        if degree == 2:
            betti['b_plus'], betti['b_minus'] = basis.signature()
    return betti
