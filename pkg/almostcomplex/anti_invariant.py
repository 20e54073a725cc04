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
J-anti-invariant cohomology of almost complex structures on the torus.

The dimension :math:`h^-_J` of the J-anti-invariant cohomology equals the
dimension of the kernel of the elliptic operator
:math:`P(\psi) = (d\delta\psi)''` on J-anti-invariant 2-forms. It is
computed here as the multiplicity of the zero eigenvalue of P, with an
independent rank test inside the harmonic self-dual forms as a cross-check.
"""

import logging
from collections import namedtuple

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils import check_random_state

from . import pointwise
from .calculus import (ext_d, codiff, hodge_laplacian, l2_norm,
                       sd_harmonic_basis)
from .exceptions import (
    InputNotAntiInvariant, FrameDegenerate, GapUndetected, SolverDivergence,
    IdenticalStructures,
)
from .fields import FormField, MetricField, ACSField

__all__ = [
    'SpectralReport', 'PathOfACS', 'PathSample', 'RankTestResult',
    'lejmi_P', 'lejmi_P_laplacian', 'anti_invariant_frame',
    'LejmiEigensolver', 'h_minus', 'h_plus', 'tame_verdict',
    'tame_indicator', 'path_scan', 'rank_test_h_minus', 'joint_rank_test',
    'max_structures_bound',
]

_logger = logging.getLogger(__name__)
_logger.setLevel(logging.INFO)

B2_TORUS = 6
B_PLUS_TORUS = 3

PathSample = namedtuple('PathSample', ['t', 'kernel_dim', 'gap_ratio',
                                       'flagged'])
RankTestResult = namedtuple('RankTestResult', ['dim', 'singular_values',
                                               'forms'])


class SpectralReport:
    """
    Result of an eigenvalue computation of the operator P.

    Parameters
    ----------
    eigenvalues : (k,) ndarray
        smallest eigenvalues, ascending
    kernel_dim : int
        number of eigenvalues below ``tolerance``
    gap_ratio : float
        first nonzero eigenvalue over the largest zero eigenvalue
    tolerance : float
        absolute kernel threshold
    resolution : int
        grid resolution of the computation
    kernel : list of FormField
        L2-normalized kernel forms
    """

    def __init__(self, eigenvalues, kernel_dim, gap_ratio, tolerance,
                 resolution, kernel=None):
        self.eigenvalues = np.asarray(eigenvalues, dtype=float)
        self.kernel_dim = int(kernel_dim)
        self.gap_ratio = float(gap_ratio)
        self.tolerance = float(tolerance)
        self.resolution = int(resolution)
        self.kernel = [] if kernel is None else list(kernel)

    def to_dict(self):
        """JSON-compatible record."""
        return {
            'eigenvalues': [float(x) for x in self.eigenvalues],
            'kernel_dim': self.kernel_dim,
            'gap_ratio': self.gap_ratio,
            'tolerance': self.tolerance,
            'resolution': self.resolution,
        }

    def __repr__(self):
        return (f'SpectralReport(kernel_dim={self.kernel_dim}, '
                f'gap_ratio={self.gap_ratio:.3e}, '
                f'resolution={self.resolution})')


class PathOfACS:
    """
    Sampled one-parameter family of almost complex structures.

    Parameters
    ----------
    samples : sequence of float
        strictly increasing parameters in [0, 1]
    rule : callable
        ``rule(t)`` returns the `ACSField` at parameter t
    """

    def __init__(self, samples, rule):
        samples = np.asarray(samples, dtype=float)
        if samples.ndim != 1 or samples.size == 0:
            raise ValueError('need a non-empty 1d array of samples')
        if np.any(np.diff(samples) <= 0):
            raise ValueError('samples must be strictly increasing')
        if samples[0] < 0 or samples[-1] > 1:
            raise ValueError('samples must lie in [0, 1]')
        if not callable(rule):
            raise TypeError('rule must be callable')
        self.samples = samples
        self.rule = rule

    def __len__(self):
        return len(self.samples)

    def __iter__(self):
        for t in self.samples:
            J = self.rule(float(t))
            if not isinstance(J, ACSField):
                raise TypeError(f'rule returned {type(J)} at t={t}')
            yield float(t), J


def _check_anti_invariant(psi, J, tol):
    values = psi.pointwise()
    inv, _ = pointwise.split_J(values, J.values)
    scale = max(1.0, psi.sup_norm())
    defect = float(np.max(np.abs(inv))) / scale
    if defect > tol:
        raise InputNotAntiInvariant(
            f'psi has a J-invariant part of size {defect:.3e} '
            f'(tolerance {tol:.1e})')


def _anti_part(field, J):
    _, anti = pointwise.split_J(field.pointwise(), J.values)
    return FormField.from_pointwise(field.chart, anti)


def lejmi_P(psi, g, J, tol=1e-8):
    r"""
    The operator :math:`P(\psi) = (d\delta^g\psi)''`.

    Parameters
    ----------
    psi : FormField
        J-anti-invariant 2-form
    g : MetricField
        metric compatible with J
    J : ACSField
        almost complex structure
    tol : float
        tolerance of the anti-invariance check of ``psi``

    Returns
    -------
    P_psi : FormField
        J-anti-invariant 2-form
    """
    _check_anti_invariant(psi, J, tol)
    return _anti_part(ext_d(codiff(psi, g)), J)


def lejmi_P_laplacian(psi, g, J, tol=1e-8):
    r"""
    P through the Hodge Laplacian,
    :math:`\frac{1}{2}\Delta\psi - \frac{1}{4}\langle\Delta\psi,
    \omega\rangle\omega`.

    Agrees with `lejmi_P` because :math:`\psi` is pointwise orthogonal to
    :math:`\omega`.
    """
    _check_anti_invariant(psi, J, tol)
    omega = J.fundamental_form(g).pointwise()
    laplace = hodge_laplacian(psi, g).pointwise()
    weight = pointwise.inner(laplace, omega, g.values)
    out = 0.5 * laplace - 0.25 * weight[..., None] * omega
    return FormField.from_pointwise(psi.chart, out)


def anti_invariant_frame(g, J, min_norm=1e-2):
    r"""
    Global orthogonal frame :math:`(\varphi, J\varphi)` of the
    J-anti-invariant forms.

    :math:`\varphi` is the normalized anti-invariant part of the constant
    coordinate 2-form whose projection stays farthest from zero.

    Parameters
    ----------
    g : MetricField
    J : ACSField
        g-compatible structure
    min_norm : float
        smallest acceptable pointwise norm squared of the projection

    Returns
    -------
    phi, j_phi : (N, N, N, N, 6) ndarray
        frame with :math:`|\varphi|_g^2 = 2` and
        :math:`\langle\varphi, J\varphi\rangle_g = 0`
    """
    shape = J.values.shape[:-2] + (6,)
    best = None
    for candidate in np.eye(6):
        _, anti = pointwise.split_J(np.broadcast_to(candidate, shape),
                                    J.values)
        n2 = pointwise.norm2(anti, g.values)
        if best is None or n2.min() > best[0]:
            best = (float(n2.min()), anti, n2)
    smallest, anti, n2 = best
    if smallest < min_norm:
        raise FrameDegenerate(
            f'no coordinate frame of the anti-invariant bundle, smallest '
            f'projection norm {smallest:.3e}')
    phi = anti * np.sqrt(2.0 / n2)[..., None]
    return phi, pointwise.j_act(phi, J.values, tol=None)


class _FrameOperator:
    # P in coordinates psi = u phi + v J phi, preconditioned by the flat
    # multiplier M = Laplace + shift, shift the smallest nonzero flat
    # eigenvalue. Nyquist modes get the part of the symbol the collocation
    # derivative drops, so the whole spectrum stays in [0, 1] on the flat
    # torus with the first nonzero eigenvalue at 1/2.

    def __init__(self, g, J, min_norm):
        self.chart = g.chart
        self.g = g
        self.phi, self.j_phi = anti_invariant_frame(g, J, min_norm)
        inverse = _raise_pointwise(g)
        self.phi_up = np.einsum('...ik,...k->...i', inverse, self.phi)
        self.j_phi_up = np.einsum('...ik,...k->...i', inverse, self.j_phi)
        self.sqrt_det = g.sqrt_det
        self.shape = (2,) + self.chart.shape
        self.size = int(np.prod(self.shape))
        k_squared = self.chart.k_squared
        self.shift = float(k_squared[k_squared > 0].min())
        # the frame has |phi|^2 = 2
        self.nyquist_symbol = 0.5 * (self.chart.k_squared_full - k_squared)
        self.half_inverse = (self.chart.k_squared_full + self.shift) ** -0.5

    def to_form(self, c):
        values = c[0][..., None] * self.phi + c[1][..., None] * self.j_phi
        return FormField.from_pointwise(self.chart, values)

    def _frame_components(self, values):
        return np.stack([np.sum(values * self.phi, axis=-1),
                         np.sum(values * self.j_phi, axis=-1)])

    def quadratic(self, c):
        psi = self.to_form(c)
        dd = ext_d(codiff(psi, self.g)).pointwise()
        out = np.stack([
            self.sqrt_det * np.sum(dd * self.phi_up, axis=-1),
            self.sqrt_det * np.sum(dd * self.j_phi_up, axis=-1),
        ])
        # fields the collocation derivative cannot see
        nyquist = self.chart.apply_symbol(psi.components, self.nyquist_symbol)
        return out + self._frame_components(np.moveaxis(nyquist, 0, -1))

    def precondition(self, c):
        return self.chart.apply_symbol(c, self.half_inverse)

    def apply(self, x):
        c = self.precondition(x.reshape(self.shape))
        return self.precondition(self.quadratic(c)).ravel()

    def apply_block(self, block):
        return np.column_stack([self.apply(col) for col in block.T])


def _raise_pointwise(g):
    if g.is_identity:
        return np.broadcast_to(np.eye(6), g.chart.shape + (6, 6))
    return g.compound(2)


class LejmiEigensolver(BaseEstimator):
    r"""
    Smallest eigenvalues of the operator P restricted to the
    J-anti-invariant forms.

    Block Lanczos iteration with full reorthogonalization and
    Rayleigh-Ritz extraction on the symmetrically preconditioned operator
    :math:`M^{-1/2} K M^{-1/2}`, where K is the quadratic form of P in the
    coordinates of a global frame and :math:`M = \Delta + \sigma` is the flat
    Fourier multiplier shifted by its smallest nonzero eigenvalue. Both
    operators share the kernel of P. The smallest ``n_converged`` Ritz pairs
    must converge, so the first nonzero eigenvalue is always resolved.

    Parameters
    ----------
    n_eigenvalues : int
        number of smallest eigenvalues to report
    block_size : int
        Lanczos block size. Must exceed the largest expected kernel
        dimension.
    max_blocks : int
        maximum number of Lanczos blocks
    min_blocks : int
        blocks computed before convergence is tested
    kernel_threshold : float
        eigenvalues below ``kernel_threshold`` times the largest Ritz value
        count as zero
    gap_band : float
        eigenvalues between the kernel threshold and ``gap_band`` times the
        largest Ritz value are ambiguous and raise `GapUndetected`
    residual_tol : float
        relative residual of converged Ritz pairs
    n_converged : int
        number of smallest Ritz pairs that must converge. Must exceed the
        largest possible kernel dimension, :math:`b^+`.
    min_frame_norm : float
        passed to `anti_invariant_frame`
    random_state : {None, int, RandomState}
        seed of the start block
    verbose : bool
        log per-block progress at DEBUG level

    Attributes
    ----------
    eigenvalues_ : ndarray
        smallest Ritz values, ascending
    kernel_dim_ : int
        dimension of the computed kernel
    gap_ratio_ : float
        separation of the kernel from the rest of the spectrum
    kernel_ : list of FormField
        L2-normalized kernel forms
    residuals_ : list of float
        largest relative residual of the checked Ritz pairs per block
    n_iter_ : int
        number of Lanczos blocks
    report_ : SpectralReport
    """

    def __init__(self, n_eigenvalues=12, block_size=4, max_blocks=60,
                 min_blocks=4, kernel_threshold=1e-6, gap_band=1e-3,
                 residual_tol=1e-8, n_converged=4,
                 min_frame_norm=1e-2, random_state=0, verbose=False):
        self.n_eigenvalues = n_eigenvalues
        self.block_size = block_size
        self.max_blocks = max_blocks
        self.min_blocks = min_blocks
        self.kernel_threshold = kernel_threshold
        self.gap_band = gap_band
        self.residual_tol = residual_tol
        self.n_converged = n_converged
        self.min_frame_norm = min_frame_norm
        self.random_state = random_state
        self.verbose = verbose

    def fit(self, g, J):
        """
        Compute the smallest eigenvalues of P for the pair ``(g, J)``.

        Parameters
        ----------
        g : MetricField
        J : ACSField
            structure compatible with ``g``

        Returns
        -------
        self : LejmiEigensolver
        """
        if self.verbose:
            _logger.setLevel(logging.DEBUG)
        else:
            _logger.setLevel(logging.INFO)
        if not isinstance(g, MetricField) or not isinstance(J, ACSField):
            raise TypeError('expected a MetricField and an ACSField')
        if not 0 < self.n_converged <= self.n_eigenvalues:
            raise ValueError('n_converged must lie in [1, n_eigenvalues]')
        # compatibility and orientation
        J.fundamental_form(g)
        operator = _FrameOperator(g, J, self.min_frame_norm)
        rng = check_random_state(self.random_state)
        theta, ritz = self._lanczos(operator, rng)

        largest = float(theta[-1])
        threshold = self.kernel_threshold * largest
        reported = theta[:self.n_eigenvalues]
        ambiguous = reported[(reported >= threshold)
                             & (reported < self.gap_band * largest)]
        if ambiguous.size:
            raise GapUndetected(
                f'eigenvalues {ambiguous} lie between the kernel threshold '
                f'{threshold:.3e} and {self.gap_band * largest:.3e}')
        kernel_dim = int(np.sum(reported < threshold))
        if kernel_dim >= self.n_converged:
            raise GapUndetected(
                f'{kernel_dim} zero eigenvalues, the first nonzero one is '
                f'beyond the {self.n_converged} converged Ritz pairs')
        if kernel_dim:
            zero = max(abs(float(reported[kernel_dim - 1])),
                       np.finfo(float).tiny)
            gap_ratio = float(reported[kernel_dim]) / zero
        else:
            gap_ratio = float(reported[0]) / threshold

        kernel = []
        for k in range(kernel_dim):
            c = operator.precondition(ritz[:, k].reshape(operator.shape))
            psi = operator.to_form(c)
            kernel.append(psi / l2_norm(psi, g))

        self.eigenvalues_ = reported
        self.kernel_dim_ = kernel_dim
        self.gap_ratio_ = gap_ratio
        self.kernel_ = kernel
        self.report_ = SpectralReport(reported, kernel_dim, gap_ratio,
                                      threshold, g.chart.resolution, kernel)
        _logger.info('h^- = %d at N = %d (gap ratio %.3e)', kernel_dim,
                     g.chart.resolution, gap_ratio)
        return self

    def _lanczos(self, operator, rng):
        size = operator.size
        b = self.block_size
        m = self.n_eigenvalues
        s = self.n_converged
        block, _ = np.linalg.qr(rng.standard_normal((size, b)))
        V = block
        AV = operator.apply_block(block)
        self.residuals_ = []
        for n_block in range(1, self.max_blocks + 1):
            self.n_iter_ = n_block
            T = V.T @ AV
            theta, Y = np.linalg.eigh(0.5 * (T + T.T))
            if V.shape[1] >= m and n_block >= self.min_blocks:
                largest = max(float(theta[-1]), np.finfo(float).tiny)
                head = Y[:, :s]
                residual = np.linalg.norm(AV @ head - (V @ head) * theta[:s],
                                          axis=0) / largest
                worst = float(residual.max())
                self.residuals_.append(worst)
                _logger.debug('block %d: dim %d, smallest Ritz values %s, '
                              'residual %.3e', n_block, V.shape[1],
                              np.array2string(theta[:4], precision=3),
                              worst)
                if worst <= self.residual_tol:
                    return theta, V @ Y
            if n_block == self.max_blocks:
                break
            W = AV[:, -b:].copy()
            for _ in range(2):
                W -= V @ (V.T @ W)
            Q, R = np.linalg.qr(W)
            small = np.abs(np.diag(R)) < 1e-12 * max(1.0, np.abs(R).max())
            if small.any():
                # invariant subspace reached, continue with fresh directions
                fresh = rng.standard_normal((size, int(small.sum())))
                for _ in range(2):
                    fresh -= V @ (V.T @ fresh)
                    fresh -= Q[:, ~small] @ (Q[:, ~small].T @ fresh)
                Q[:, small] = np.linalg.qr(fresh)[0]
            V = np.hstack([V, Q])
            AV = np.hstack([AV, operator.apply_block(Q)])
        raise SolverDivergence(
            f'block Lanczos did not converge in {self.max_blocks} blocks '
            f'(residual {self.residuals_[-1] if self.residuals_ else np.nan:.3e})')


def h_minus(g, J, **kwargs):
    """
    Dimension of the J-anti-invariant cohomology.

    Parameters
    ----------
    g : MetricField
    J : ACSField
        g-compatible almost complex structure
    **kwargs
        passed to `LejmiEigensolver`

    Returns
    -------
    report : SpectralReport
    """
    return LejmiEigensolver(**kwargs).fit(g, J).report_


def h_plus(g, J, **kwargs):
    r"""
    Dimension of the J-invariant cohomology,
    :math:`h^+_J = b_2 - h^-_J` on the torus.
    """
    return B2_TORUS - h_minus(g, J, **kwargs).kernel_dim


def tame_verdict(b_plus, h_minus_value, heuristic=False):
    """
    Taming criterion from the Betti number and the anti-invariant dimension.

    Parameters
    ----------
    b_plus : int
    h_minus_value : int
    heuristic : bool
        mark the verdict as heuristic (non-integrable structures)

    Returns
    -------
    difference : int
        ``b_plus - h_minus_value``
    verdict : str
        ``'tamed-criterion-met'`` or ``'tamed-criterion-not-met'``, with a
        ``' (heuristic)'`` suffix if requested
    """
    difference = int(b_plus) - int(h_minus_value)
    verdict = ('tamed-criterion-met' if difference >= 1
               else 'tamed-criterion-not-met')
    if heuristic:
        verdict += ' (heuristic)'
    return difference, verdict


def tame_indicator(g, J, **kwargs):
    """
    Taming criterion ``b+ - h- >= 1`` for a structure on the torus.

    The criterion characterizes tamed structures among integrable ones
    only; the verdict is labeled heuristic when J is not integrable.
    """
    from .hermitian import nijenhuis_field

    report = h_minus(g, J, **kwargs)
    tensor, _ = nijenhuis_field(J)
    integrable = float(np.max(np.abs(tensor))) < 1e-8
    return tame_verdict(B_PLUS_TORUS, report.kernel_dim,
                        heuristic=not integrable)


def path_scan(path, metric_rule=None, **kwargs):
    r"""
    Kernel dimensions along a path of almost complex structures.

    Parameters
    ----------
    path : PathOfACS
    metric_rule : {None, callable}
        ``metric_rule(t, J)`` returns a metric compatible with J. The
        default averages the flat metric over J.
    **kwargs
        passed to `LejmiEigensolver`

    Returns
    -------
    samples : list of PathSample
        ``kernel_dim`` and ``gap_ratio`` are None where the gap check
        failed. ``flagged`` marks isolated downward dips, which upper
        semi-continuity of :math:`h^-` forbids in the limit.
    """
    rows = []
    for t, J in path:
        if metric_rule is None:
            flat = np.broadcast_to(np.eye(4), J.values.shape)
            g = MetricField(J.chart, pointwise.average_metric(flat, J.values))
        else:
            g = metric_rule(t, J)
        try:
            report = h_minus(g, J, **kwargs)
            rows.append([t, report.kernel_dim, report.gap_ratio, False])
        except GapUndetected as error:
            _logger.warning('no spectral gap at t = %.4f: %s', t, error)
            rows.append([t, None, None, True])
        _logger.debug('t = %.4f: h^- = %s', t, rows[-1][1])
    for i in range(1, len(rows) - 1):
        here = rows[i][1]
        left, right = rows[i - 1][1], rows[i + 1][1]
        if None in (here, left, right):
            continue
        if here < min(left, right):
            rows[i][3] = True
            _logger.warning('isolated drop of h^- at t = %.4f', rows[i][0])
    return [PathSample(*row) for row in rows]


def _orthogonality_matrix(basis, omegas, g):
    # one row per grid point and structure, one column per basis form
    columns = []
    for sigma in basis:
        values = sigma.pointwise()
        columns.append(np.concatenate([
            pointwise.inner(values, omega, g.values).ravel()
            for omega in omegas]))
    return np.column_stack(columns)


def joint_rank_test(g, structures, basis=None, threshold=1e-8):
    """
    Closed self-dual forms anti-invariant for all given structures.

    Parameters
    ----------
    g : MetricField
        metric compatible with every structure
    structures : list of ACSField
    basis : {None, list of FormField}
        harmonic self-dual basis of ``g``, computed if None
    threshold : float
        relative singular value threshold

    Returns
    -------
    result : RankTestResult
    """
    basis = sd_harmonic_basis(g) if basis is None else basis
    omegas = [J.fundamental_form(g).pointwise() for J in structures]
    matrix = _orthogonality_matrix(basis, omegas, g)
    _, singular, vh = np.linalg.svd(matrix, full_matrices=False)
    scale = max(float(singular.max()), np.finfo(float).tiny)
    rank = int(np.sum(singular > threshold * scale))
    forms = []
    for coefficients in vh[rank:]:
        form = FormField.zeros(g.chart, 2)
        for c, sigma in zip(coefficients, basis):
            form = form + sigma * c
        forms.append(form)
    return RankTestResult(len(basis) - rank, singular, forms)


def rank_test_h_minus(g, J, basis=None, threshold=1e-8):
    r"""
    :math:`h^-_J` as the dimension of the harmonic self-dual forms that are
    pointwise orthogonal to :math:`\omega`.

    Parameters
    ----------
    g : MetricField
    J : ACSField
        g-compatible structure
    basis : {None, list of FormField}
        harmonic self-dual basis of ``g``, computed if None
    threshold : float
        relative singular value threshold

    Returns
    -------
    result : RankTestResult
    """
    return joint_rank_test(g, [J], basis, threshold)


def _same_up_to_sign(J1, J2, tol=1e-10):
    plus = np.max(np.abs(J1.values - J2.values), axis=(-2, -1))
    minus = np.max(np.abs(J1.values + J2.values), axis=(-2, -1))
    return bool(np.all(np.minimum(plus, minus) < tol))


def max_structures_bound(g, structures, basis=None, threshold=1e-8):
    r"""
    Check the bounds on :math:`h^-` for several g-compatible structures.

    Two different structures compatible with the same metric share at most
    one anti-invariant class. Hence at most one of them reaches
    :math:`h^- \geq (b^+ + 3)/2` for odd :math:`b^+`, respectively
    :math:`(b^+ + 2)/2` for even :math:`b^+`, and if one of them has
    :math:`h^- = b^+`, every other one has :math:`h^- \leq 1`.

    Parameters
    ----------
    g : MetricField
    structures : list of ACSField
        pairwise different (also up to sign) g-compatible structures
    basis : {None, list of FormField}
        harmonic self-dual basis of ``g``, computed if None
    threshold : float
        relative singular value threshold

    Returns
    -------
    values : list of int
        :math:`h^-` of every structure from the rank test
    holds : bool
        True if both bounds hold
    """
    for i, J1 in enumerate(structures):
        for J2 in structures[i + 1:]:
            if _same_up_to_sign(J1, J2):
                raise IdenticalStructures(
                    'structures agree up to sign at every point')
    basis = sd_harmonic_basis(g) if basis is None else basis
    b_plus = len(basis)
    values = [rank_test_h_minus(g, J, basis, threshold).dim
              for J in structures]
    large = b_plus // 2 + 1 + b_plus % 2
    holds = sum(v >= large for v in values) <= 1
    if b_plus in values:
        holds = holds and all(v <= 1 for v in values if v != b_plus) \
            and values.count(b_plus) == 1
    if not holds:
        _logger.warning('h^- values %s violate the bounds for b+ = %d',
                        values, b_plus)
    return values, holds
