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
Compatible symplectic forms with prescribed volume on the torus.

For an almost complex structure J near a structure :math:`\tilde J` with
compatible symplectic form :math:`\tilde\omega` the solver looks for

.. math:: \omega = \tilde\omega + \sum_i s_i\chi_i + db, \qquad
    d^*b = 0,

J-invariant with :math:`\omega^2 = e^F\tilde\omega^2` up to the volume of
the class. The :math:`\chi_i` span the self-dual harmonic forms orthogonal
to :math:`\tilde\omega`. The nonlinear residual is

.. math:: \Phi(b, s) = \log\frac{\omega^2}{e^F\tilde\omega^2}\,
    \frac{(1 - \Pi_J)\tilde\omega}{2} + \Pi_J\omega

with the projector :math:`\Pi_J` onto J-anti-invariant forms. It vanishes
exactly for J-compatible forms of the prescribed volume. Newton steps are
solved by GMRES on the Jacobian, preconditioned with the inverse of the
frozen operator :math:`L = d^*\oplus d^+` of the reference metric.
"""

import copy
import logging
from collections import namedtuple

import numpy as np
import scipy.sparse.linalg as splinalg
from sklearn.base import BaseEstimator

from . import pointwise
from .anti_invariant import h_minus, B2_TORUS
from .calculus import (ext_d, codiff, star, wedge, l2_inner, l2_norm,
                       harmonic_basis, sd_harmonic_basis, _weight,
                       _flat_codiff)
from .exceptions import (
    DegenerateCandidate, DimensionMismatch, GapUndetected, NewtonDivergence,
    RhsNotInRange, SolverDivergence, TamingLost, UnsupportedNonInvariant,
)
from .fields import FormField, MetricField, ACSField

__all__ = [
    'TypeDProblem', 'CYSolution', 'TypeDSolver', 'pi_tensor',
    'phi_residual', 'linearized_solve', 'solve_type_D', 'ray_classes',
    'SemicontinuityRow', 'semicontinuity_experiment',
]

_logger = logging.getLogger(__name__)
_logger.setLevel(logging.INFO)

SemicontinuityRow = namedtuple('SemicontinuityRow', [
    't', 'h_minus', 'h_plus', 'solved', 'class_rank', 'holds', 'errors'])


def pi_tensor(J, alpha):
    r"""
    Projection onto the J-anti-invariant part,
    :math:`\Pi^{ij}_{kl} = \frac{1}{2}(\delta^i_k\delta^j_l -
    J^i_kJ^j_l)`.

    Parameters
    ----------
    J : ACSField
    alpha : FormField or (N, N, N, N, 6) ndarray
        2-form

    Returns
    -------
    anti : same type as ``alpha``
    """
    values = alpha.pointwise() if isinstance(alpha, FormField) else alpha
    A = pointwise.two_form_matrix(values)
    pulled = np.einsum('...ik,...jl,...ij->...kl', J.values, J.values, A)
    out = pointwise.two_form_vector(0.5 * (A - pulled))
    if isinstance(alpha, FormField):
        return FormField.from_pointwise(alpha.chart, out)
    return out


def _polarized_pfaffian(a, b):
    # Pf(a + t b) = Pf(a) + t B(a, b) + t^2 Pf(b)
    return (a[..., 0] * b[..., 5] + a[..., 5] * b[..., 0]
            - a[..., 1] * b[..., 4] - a[..., 4] * b[..., 1]
            + a[..., 2] * b[..., 3] + a[..., 3] * b[..., 2])


def _resolved_norm(field):
    # modes touching the Nyquist frequency are out of reach of d
    return float(np.max(np.abs(field.chart.remove_nyquist(field.components))))


def _self_dual(alpha, g):
    return (alpha + star(alpha, g)) * 0.5


class TypeDProblem:
    r"""
    Data of the compatible volume form problem.

    Parameters
    ----------
    J : ACSField
        structure the solution has to be compatible with
    omega : FormField
        closed reference form, compatible with ``g``
    g : MetricField
        reference metric
    F : {None, float, ndarray, FormField}
        volume data. It is shifted by a constant so that
        :math:`\int e^F\tilde\omega^2 = \int\tilde\omega^2`.
    tol : float
        tolerance of the closedness and compatibility checks

    Attributes
    ----------
    chi : list of FormField
        L2-orthonormal self-dual harmonic forms orthogonal to ``omega``
    harmonic_sd : list of FormField
        ``omega`` normalized, followed by ``chi``
    harmonic1 : HarmonicBasis
        harmonic 1-forms of ``g``
    intersection : ndarray
        :math:`\int h_a\wedge h_b` over ``omega`` and ``chi``
    F_shift : float
        constant subtracted from the given F
    taming_margin : float
        smallest value of :math:`\tilde\omega(X, JX)` over unit vectors
    """

    def __init__(self, J, omega, g, F=None, tol=1e-8):
        if not isinstance(J, ACSField) or not isinstance(g, MetricField):
            raise TypeError('expected an ACSField and a MetricField')
        if omega.degree != 2:
            raise DimensionMismatch('reference form must be a 2-form')
        chart = g.chart
        self.chart = chart
        self.g = g
        self.omega = omega
        values = omega.pointwise()
        # raises NotOnTwistorFiber unless omega is compatible with g
        self.J_ref = ACSField(chart, pointwise.acs_from_form(g.values, values,
                                                             tol=tol))
        defect = ext_d(omega).sup_norm()
        if defect > tol * max(1.0, omega.sup_norm()):
            raise ValueError(f'reference form is not closed '
                             f'(|d omega| = {defect:.3e})')
        self.pfaffian_ref = pointwise.pfaffian(values)

        if F is None:
            F = np.zeros(chart.shape)
        elif isinstance(F, FormField):
            F = F.scalar
        F = np.broadcast_to(np.asarray(F, dtype=float), chart.shape)
        weights = self.pfaffian_ref
        self.F_shift = float(np.log(np.sum(np.exp(F) * weights)
                                    / np.sum(weights)))
        if abs(self.F_shift) > 1e-14:
            _logger.info('volume data shifted by %.3e to match the volume',
                         -self.F_shift)
        self.F = F - self.F_shift

        self.harmonic1 = harmonic_basis(g, 1)
        omega_hat = omega / l2_norm(omega, g)
        chi = []
        for h in sd_harmonic_basis(g):
            h = h - omega_hat * l2_inner(h, omega_hat, g)
            for c in chi:
                h = h - c * l2_inner(h, c, g)
            n = l2_norm(h, g)
            if n > 0.5:
                chi.append(h / n)
        if len(chi) != 2:
            raise DimensionMismatch(
                f'{len(chi)} harmonic self-dual forms orthogonal to the '
                f'reference form, expected 2')
        self.chi = chi
        self.harmonic_sd = [omega_hat] + chi
        forms = [omega] + chi
        self.intersection = np.array([[chart.integrate(wedge(a, b).scalar)
                                       for b in forms] for a in forms])
        self._set_structure(J)

    def _set_structure(self, J):
        self.J = J
        self.omega_invariant, _ = pointwise.split_J(self.omega.pointwise(),
                                                    J.values)
        self.taming_margin = float(np.min(
            pointwise.tames(self.omega.pointwise(), J.values)))

    @classmethod
    def flat(cls, chart, J=None, F=None, tol=1e-8):
        r"""
        Problem with reference :math:`e^{12} + e^{34}` and the flat metric.
        """
        J = ACSField.standard(chart) if J is None else J
        omega = FormField.constant(chart, 2, [1, 0, 0, 0, 0, 1])
        return cls(J, omega, MetricField.flat(chart), F, tol)

    def with_structure(self, J):
        """Same reference data and volume with another structure."""
        clone = copy.copy(self)
        clone._set_structure(J)
        return clone

    @property
    def n_classes(self):
        return len(self.chi)

    def combination(self, s):
        r""":math:`\sum_i s_i\chi_i`."""
        out = FormField.zeros(self.chart, 2)
        for coefficient, form in zip(s, self.chi):
            out = out + form * float(coefficient)
        return out

    def candidate(self, b=None, s=None):
        r"""The form :math:`\tilde\omega + \sum_i s_i\chi_i + db`."""
        out = self.omega
        if s is not None:
            out = out + self.combination(s)
        if b is not None:
            out = out + ext_d(b)
        return out

    def class_volume(self, s=None):
        r"""Cup square of the class :math:`[\tilde\omega + \sum s_i\chi_i]`."""
        v = np.concatenate([[1.0], np.zeros(self.n_classes) if s is None
                            else np.asarray(s, dtype=float)])
        return float(v @ self.intersection @ v)

    def volume_gradient(self, s=None):
        """Gradient of `class_volume` with respect to s."""
        v = np.concatenate([[1.0], np.zeros(self.n_classes) if s is None
                            else np.asarray(s, dtype=float)])
        return 2 * (self.intersection @ v)[1:]

    def __repr__(self):
        return (f'TypeDProblem(resolution={self.chart.resolution}, '
                f'taming_margin={self.taming_margin:.3e})')


def phi_residual(b, s, problem):
    r"""
    Nonlinear residual :math:`\Phi(b, s)`.

    Parameters
    ----------
    b : {None, FormField}
        1-form, zero if None
    s : {None, array_like}
        class coefficients, zero if None
    problem : TypeDProblem

    Returns
    -------
    phi : FormField
        2-form. Its J-invariant part is half the log volume defect times
        the invariant part of the reference form, its anti-invariant part
        is the anti-invariant part of the candidate.

    Raises
    ------
    DegenerateCandidate
        if the candidate has a nonpositive square somewhere
    """
    candidate = problem.candidate(b, s).pointwise()
    pf = pointwise.pfaffian(candidate)
    bad = pf <= 0
    if np.any(bad):
        raise DegenerateCandidate(
            f'candidate square is nonpositive at {int(np.sum(bad))} points '
            f'(smallest Pfaffian {pf.min():.3e})')
    log_ratio = (np.log(pf / problem.pfaffian_ref) - problem.F
                 - np.log(problem.class_volume(s) / problem.class_volume()))
    out = 0.5 * log_ratio[..., None] * problem.omega_invariant \
        + pi_tensor(problem.J, candidate)
    return FormField.from_pointwise(problem.chart, out)


def linearized_solve(rhs0, rhs2, g, tol=1e-12, maxiter=500, range_tol=1e-8,
                     harmonic1=None, harmonic_sd=None, check=True):
    r"""
    Solve :math:`d^*a = f`, :math:`d^+a = \sigma` for a 1-form a
    orthogonal to the harmonic 1-forms.

    The least squares problem :math:`\|d^*a - f\|^2 + 2\|d^+a -
    \sigma\|^2` is solved by conjugate gradients on its normal equations,
    which reduce to the Hodge Laplacian for the flat metric. The flat
    inverse Laplacian is the preconditioner.

    Parameters
    ----------
    rhs0 : {None, FormField}
        0-form with zero mean
    rhs2 : {None, FormField}
        self-dual 2-form orthogonal to the harmonic self-dual forms
    g : MetricField
    tol : float
        relative residual of the conjugate gradients
    maxiter : int
    range_tol : float
        relative size of the excluded harmonic components that raises
    harmonic1 : {None, HarmonicBasis}
        harmonic 1-forms of g, computed if None
    harmonic_sd : {None, list of FormField}
        orthonormal harmonic self-dual forms of g, computed if needed
    check : bool
        check that the right-hand side lies in the range

    Returns
    -------
    a : FormField
        1-form

    Raises
    ------
    RhsNotInRange
        if the right-hand side has components along constants, harmonic
        self-dual forms or anti-self-dual forms
    """
    chart = g.chart
    rhs0 = FormField.zeros(chart, 0) if rhs0 is None else rhs0
    rhs2 = FormField.zeros(chart, 2) if rhs2 is None else rhs2
    if check:
        norm0 = l2_norm(rhs0, g)
        if norm0 > 0:
            mean = chart.integrate(rhs0.scalar * g.sqrt_det)
            ratio = abs(mean) / (norm0 * np.sqrt(chart.integrate(g.sqrt_det)))
            if ratio > range_tol:
                raise RhsNotInRange(f'0-form part has a mean (relative '
                                    f'{ratio:.3e})')
        norm2 = l2_norm(rhs2, g)
        if norm2 > 0:
            asd = l2_norm(rhs2 - _self_dual(rhs2, g), g) / norm2
            if asd > range_tol:
                raise RhsNotInRange(f'2-form part is not self-dual '
                                    f'(relative {asd:.3e})')
            harmonic_sd = sd_harmonic_basis(g) if harmonic_sd is None \
                else harmonic_sd
            projection = np.linalg.norm([l2_inner(rhs2, h, g)
                                         for h in harmonic_sd]) / norm2
            if projection > range_tol:
                raise RhsNotInRange(f'2-form part has a harmonic component '
                                    f'(relative {projection:.3e})')

    shape = (4,) + chart.shape
    size = int(np.prod(shape))

    def normal(components):
        a = FormField(chart, 1, components)
        first = _weight(ext_d(codiff(a, g)), g)
        second = _flat_codiff(_weight(_self_dual(ext_d(a), g), g), chart, 2)
        return first + 2 * second

    rhs = (_weight(ext_d(rhs0), g)
           + 2 * _flat_codiff(_weight(_self_dual(rhs2, g), g), chart, 2))
    rhs = rhs.ravel()
    rhs_norm = float(np.linalg.norm(rhs))
    if rhs_norm == 0.0:
        return FormField.zeros(chart, 1)
    operator = splinalg.LinearOperator(
        (size, size), matvec=lambda x: normal(x.reshape(shape)).ravel())
    preconditioner = splinalg.LinearOperator(
        (size, size),
        matvec=lambda x: chart.inverse_laplacian(x.reshape(shape)).ravel())
    solution, info = splinalg.cg(operator, rhs, rtol=tol,
                                 atol=tol * rhs_norm * 1e-3, maxiter=maxiter,
                                 M=preconditioner)
    if info != 0:
        raise SolverDivergence(
            f'linearized operator: CG did not converge in {maxiter} '
            f'iterations')
    a = FormField(chart, 1, solution.reshape(shape))
    harmonic1 = harmonic_basis(g, 1) if harmonic1 is None else harmonic1
    for h in harmonic1:
        a = a - h * l2_inner(a, h, g)
    return a


class CYSolution:
    """
    Converged solution of the compatible volume form problem.

    Attributes
    ----------
    b : FormField
        coclosed 1-form
    s : ndarray
        class coefficients
    omega : FormField
        closed J-compatible form
    residuals : list of float
        sup norm of the residual per accepted iterate, taken over the
        Fourier modes away from the Nyquist frequency
    iterations : int
        number of Newton corrections
    defects : dict
        a posteriori checks: ``closedness``, ``compatibility``, ``volume``,
        ``gauge``, ``taming`` (smallest value of omega(X, JX)) and
        ``unresolved``, the anti-invariant part left on Nyquist modes
    """

    def __init__(self, b, s, omega, residuals, iterations, defects):
        self.b = b
        self.s = np.asarray(s, dtype=float)
        self.omega = omega
        self.residuals = list(residuals)
        self.iterations = int(iterations)
        self.defects = dict(defects)

    def cohomology_class(self):
        """Constant representative of the class of omega."""
        return self.omega.chart.mean(self.omega.components)

    def to_dict(self):
        """JSON-compatible run record."""
        return {
            's': [float(x) for x in self.s],
            'residuals': [float(x) for x in self.residuals],
            'iterations': self.iterations,
            'defects': {k: float(v) for k, v in self.defects.items()},
            'class': [float(x) for x in self.cohomology_class()],
        }

    def __repr__(self):
        return (f'CYSolution(iterations={self.iterations}, '
                f'residual={self.residuals[-1]:.3e})')


class TypeDSolver(BaseEstimator):
    r"""
    Damped Newton solver for :math:`\Phi(b, s) = 0`.

    Every Newton step solves the Jacobian system by GMRES, left
    preconditioned with the inverse of the frozen operator
    :math:`L(b, s) = (d^*b, d^+b + \sum_i s_i\chi_i)` of the reference
    metric. Steps whose candidate degenerates or whose residual does not
    decrease are halved.

    Parameters
    ----------
    tol : float
        sup norm of the residual at convergence, Nyquist modes excluded
    max_iter : int
        maximal number of Newton steps
    krylov_tol : float
        relative residual of the GMRES solves
    cg_tol : float
        relative residual of the preconditioner solves
    max_halvings : int
        step halvings before a step is given up
    verbose : bool
        log every iteration at DEBUG level

    Attributes
    ----------
    solution_ : CYSolution
    residuals_ : list of float
    n_iter_ : int
    """

    def __init__(self, tol=1e-8, max_iter=30, krylov_tol=1e-10, cg_tol=1e-12,
                 max_halvings=8, verbose=False):
        self.tol = tol
        self.max_iter = max_iter
        self.krylov_tol = krylov_tol
        self.cg_tol = cg_tol
        self.max_halvings = max_halvings
        self.verbose = verbose

    def fit(self, problem, b=None, s=None):
        """
        Solve the problem starting from ``(b, s)``.

        Parameters
        ----------
        problem : TypeDProblem
        b : {None, FormField}
            initial coclosed 1-form, zero if None
        s : {None, array_like}
            initial class coefficients, zero if None

        Returns
        -------
        self : TypeDSolver

        Raises
        ------
        TamingLost
            if the reference form does not tame J or every halved step
            degenerates
        NewtonDivergence
            if the iteration stalls or exceeds ``max_iter``
        """
        if self.verbose:
            _logger.setLevel(logging.DEBUG)
        else:
            _logger.setLevel(logging.INFO)
        if problem.taming_margin <= 0:
            raise TamingLost(f'reference form does not tame J (margin '
                             f'{problem.taming_margin:.3e})')
        chart = problem.chart
        b = FormField.zeros(chart, 1) if b is None else b
        s = np.zeros(problem.n_classes) if s is None \
            else np.asarray(s, dtype=float)
        residual = phi_residual(b, s, problem)
        history = [_resolved_norm(residual)]
        self.residuals_ = history
        n_iter = 0
        while history[-1] > self.tol:
            if n_iter == self.max_iter:
                raise NewtonDivergence(
                    f'no convergence in {self.max_iter} Newton steps '
                    f'(residual {history[-1]:.3e}, tolerance {self.tol:.1e})',
                    history)
            step_b, step_s = self._newton_step(problem, b, s, residual)
            b, s, residual = self._line_search(problem, b, s, step_b, step_s,
                                               history)
            n_iter += 1
            history.append(_resolved_norm(residual))
            _logger.debug('Newton step %d: residual %.3e, s = %s', n_iter,
                          history[-1], np.array2string(s, precision=4))
        self.n_iter_ = n_iter
        omega = problem.candidate(b, s)
        defects = _defects(problem, b, s, omega)
        _logger.info('type D solve: %d steps, residual %.3e, volume defect '
                     '%.3e', n_iter, history[-1], defects['volume'])
        self.solution_ = CYSolution(b, s, omega, history, n_iter, defects)
        return self

    def _invert_frozen(self, problem, values):
        # L^{-1} of the self-dual part, the omega direction is dropped
        g = problem.g
        form = _self_dual(FormField.from_pointwise(problem.chart, values), g)
        coefficients = [l2_inner(form, h, g) for h in problem.harmonic_sd]
        for c, h in zip(coefficients, problem.harmonic_sd):
            form = form - h * c
        b = linearized_solve(None, form, g, tol=self.cg_tol,
                             harmonic1=problem.harmonic1, check=False)
        return b, np.asarray(coefficients[1:])

    def _newton_step(self, problem, b, s, residual):
        chart = problem.chart
        shape = (4,) + chart.shape
        n_b = int(np.prod(shape))
        size = n_b + problem.n_classes
        candidate = problem.candidate(b, s).pointwise()
        pf = pointwise.pfaffian(candidate)
        dlog_volume = problem.volume_gradient(s) / problem.class_volume(s)

        def pack(step_b, step_s):
            return np.concatenate([step_b.components.ravel(), step_s])

        def jacobian(x):
            db = FormField(chart, 1, x[:n_b].reshape(shape))
            ds = x[n_b:]
            eta = (problem.combination(ds) + ext_d(db)).pointwise()
            dlog = _polarized_pfaffian(candidate, eta) / pf \
                - float(dlog_volume @ ds)
            values = 0.5 * dlog[..., None] * problem.omega_invariant \
                + pi_tensor(problem.J, eta)
            return pack(*self._invert_frozen(problem, values))

        operator = splinalg.LinearOperator((size, size), matvec=jacobian)
        rhs = pack(*self._invert_frozen(problem, -residual.pointwise()))
        solution, info = splinalg.gmres(operator, rhs, rtol=self.krylov_tol,
                                        atol=0.0, restart=40, maxiter=5)
        if info < 0:
            raise SolverDivergence('GMRES failed on the Newton system')
        if info > 0:
            _logger.debug('GMRES stopped before reaching %.1e',
                          self.krylov_tol)
        step_b = FormField(chart, 1, solution[:n_b].reshape(shape))
        return step_b, solution[n_b:]

    def _line_search(self, problem, b, s, step_b, step_s, history):
        current = history[-1]
        step = 1.0
        degenerate = 0
        for _ in range(self.max_halvings + 1):
            trial_b = b + step_b * step
            trial_s = s + step * step_s
            try:
                trial = phi_residual(trial_b, trial_s, problem)
            except DegenerateCandidate as err:
                degenerate += 1
                _logger.debug('step %.3e rejected: %s', step, err)
                step *= 0.5
                continue
            if _resolved_norm(trial) < current:
                return trial_b, trial_s, trial
            step *= 0.5
        if degenerate:
            raise TamingLost(
                f'candidate degenerated at {degenerate} of '
                f'{self.max_halvings + 1} trial steps (residual '
                f'{current:.3e})')
        raise NewtonDivergence(
            f'no residual decrease after {self.max_halvings} halvings '
            f'(residual {current:.3e})', history)


def _defects(problem, b, s, omega):
    values = omega.pointwise()
    target = np.exp(problem.F) * problem.pfaffian_ref \
        * problem.class_volume(s) / problem.class_volume()
    volume = float(np.max(np.abs(pointwise.pfaffian(values) - target))
                   / np.max(np.abs(problem.pfaffian_ref)))
    unresolved = pi_tensor(problem.J, omega)
    unresolved = float(np.max(np.abs(unresolved.components - problem.chart
                                     .remove_nyquist(unresolved.components))))
    return {
        'closedness': ext_d(omega).sup_norm(),
        'compatibility': float(np.max(np.abs(pi_tensor(problem.J, values)))),
        'volume': volume,
        'gauge': codiff(b, problem.g).sup_norm(),
        'taming': float(np.min(pointwise.tames(values, problem.J.values))),
        'unresolved': unresolved,
    }


def solve_type_D(problem, b=None, s=None, **kwargs):
    """
    J-compatible symplectic form with prescribed volume.

    Parameters
    ----------
    problem : TypeDProblem
    b, s : initial guess, zero if None
    **kwargs
        passed to `TypeDSolver`

    Returns
    -------
    solution : CYSolution
    """
    return TypeDSolver(**kwargs).fit(problem, b, s).solution_


def ray_classes(problem, c=0.2):
    r"""
    Reference problems whose classes span the invariant cohomology of a
    constant Kaehler structure.

    The reference form :math:`\tilde\omega` is joined by
    :math:`\tilde\omega + c\,\gamma_k` for the three constant
    anti-self-dual forms :math:`\gamma_k`. All of them are compatible with
    the reference structure for the metric they induce.

    Parameters
    ----------
    problem : TypeDProblem
        problem with constant reference form and metric
    c : float
        weight of the anti-self-dual direction, below 1

    Returns
    -------
    problems : list of TypeDProblem
        ``problem`` itself followed by three problems with the same
        structure and volume data
    """
    if not 0 < abs(c) < 1:
        raise ValueError(f'c must lie in (-1, 1) without 0, got {c}')
    g0 = problem.g.values.reshape(-1, 4, 4)
    J0 = problem.J_ref.values.reshape(-1, 4, 4)
    if not (np.all(g0 == g0[0]) and np.all(J0 == J0[0])):
        raise UnsupportedNonInvariant(
            'ray classes need a constant reference pair')
    chart = problem.chart
    basis = pointwise.split_basis(g0[0], J0[0])
    problems = [problem]
    for gamma in basis.asd_basis:
        omega = problem.omega + FormField.constant(chart, 2, c * gamma)
        g = MetricField.constant(
            chart, pointwise.metric_from_form(omega.pointwise()[0, 0, 0, 0],
                                              J0[0]))
        problems.append(TypeDProblem(problem.J, omega, g,
                                     problem.F + problem.F_shift))
    return problems


def semicontinuity_experiment(path, problem, c=0.2, solver_kwargs=None,
                              eigen_kwargs=None):
    r"""
    Invariant and anti-invariant dimensions along a path, witnessed by
    compatible forms.

    For every sampled structure :math:`J'` the type D problem is solved
    for all ray classes of ``problem``. The classes of the solutions are
    :math:`J'`-invariant, so their rank bounds :math:`h^+_{J'}` from below.

    Parameters
    ----------
    path : PathOfACS
        path whose first sample is the base structure of ``problem``
    problem : TypeDProblem
        constant reference data
    c : float
        passed to `ray_classes`
    solver_kwargs : {None, dict}
        passed to `TypeDSolver`
    eigen_kwargs : {None, dict}
        passed to :func:`almostcomplex.anti_invariant.h_minus`

    Returns
    -------
    rows : list of SemicontinuityRow
        ``holds`` compares with the first sample: :math:`h^+` may only
        grow and :math:`h^-` only drop. It is None where a solve or the
        gap check failed.
    """
    solver_kwargs = {} if solver_kwargs is None else solver_kwargs
    eigen_kwargs = {} if eigen_kwargs is None else eigen_kwargs
    rays = ray_classes(problem, c)
    rows = []
    base = None
    for t, J in path:
        flat = np.broadcast_to(np.eye(4), J.values.shape)
        g = MetricField(J.chart, pointwise.average_metric(flat, J.values))
        try:
            h_m = h_minus(g, J, **eigen_kwargs).kernel_dim
        except GapUndetected as err:
            _logger.warning('no spectral gap at t = %.4f: %s', t, err)
            h_m = None
        h_p = None if h_m is None else B2_TORUS - h_m
        classes = []
        errors = []
        for ray in rays:
            try:
                solution = solve_type_D(ray.with_structure(J),
                                        **solver_kwargs)
                classes.append(solution.cohomology_class())
            except (SolverDivergence, TamingLost, DegenerateCandidate) as err:
                errors.append(f'{type(err).__name__}: {err}')
        rank = int(np.linalg.matrix_rank(np.array(classes), tol=1e-8)) \
            if classes else 0
        if base is None:
            base = (h_m, h_p)
        holds = None
        if not errors and h_m is not None and None not in base:
            holds = h_p >= base[1] and h_m <= base[0] and rank <= h_p
            if not holds:
                _logger.warning('semi-continuity violated at t = %.4f: '
                                'h- = %d, h+ = %d, class rank %d', t, h_m,
                                h_p, rank)
        _logger.info('t = %.4f: h- = %s, %d of %d solves, class rank %d',
                     t, h_m, len(classes), len(rays), rank)
        rows.append(SemicontinuityRow(t, h_m, h_p, len(classes), rank, holds,
                                      errors))
    return rows
