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

"""Invariant forms on 4-dimensional nilpotent Lie algebras"""

import itertools
import logging as _logging
from fractions import Fraction

import numpy as _np
import sympy

from .. import pointwise
from ..exceptions import (
    JacobiViolation, NormViolation, UnsupportedNonInvariant,
    DimensionMismatch, DegreeOverflow,
)

_logger = _logging.getLogger(__name__)

MAX_DENOMINATOR = 10 ** 6

_INDICES = {p: list(itertools.combinations(range(4), p)) for p in range(5)}


def _rational(value):
    # floats snap to the nearest fraction with a bounded denominator
    if isinstance(value, _np.generic):
        value = value.item()
    if isinstance(value, sympy.Basic):
        return sympy.nsimplify(value) if not value.is_Rational else value
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    if isinstance(value, str):
        return sympy.Rational(value)
    if isinstance(value, float):
        value = Fraction(value).limit_denominator(MAX_DENOMINATOR)
        return sympy.Rational(value.numerator, value.denominator)
    return sympy.Rational(value)


def _sort_sign(sequence):
    # sorted tuple and permutation sign, sign 0 for repeated indices
    if len(set(sequence)) < len(sequence):
        return None, 0
    inversions = sum(1 for i in range(len(sequence))
                     for j in range(i + 1, len(sequence))
                     if sequence[i] > sequence[j])
    return tuple(sorted(sequence)), (-1) ** inversions


class InvariantForm:
    """
    Left-invariant form given by constant coefficients.

    Parameters
    ----------
    degree : int
        form degree, 0..4
    coefficients : sequence
        ``C(4, degree)`` coefficients in the lexicographic wedge basis.
        Rational inputs stay exact.
    """

    def __init__(self, degree, coefficients):
        if degree not in _INDICES:
            raise ValueError(f'degree {degree} outside 0..4')
        coefficients = [_rational(c) for c in coefficients]
        if len(coefficients) != len(_INDICES[degree]):
            raise DimensionMismatch(
                f'{len(coefficients)} coefficients for a {degree}-form')
        self.degree = degree
        self.coefficients = sympy.Matrix(coefficients)

    @classmethod
    def basis(cls, degree, *indices):
        """Basis form from 1-based indices, e.g. ``basis(2, 1, 3)``."""
        target = tuple(sorted(i - 1 for i in indices))
        values = [1 if idx == target else 0 for idx in _INDICES[degree]]
        _, sign = _sort_sign([i - 1 for i in indices])
        return cls(degree, [sign * v for v in values])

    def numeric(self):
        """Coefficients as a float array."""
        return _np.array([float(c) for c in self.coefficients])

    def __eq__(self, other):
        return (isinstance(other, InvariantForm)
                and self.degree == other.degree
                and self.coefficients == other.coefficients)

    def __add__(self, other):
        return InvariantForm(self.degree, self.coefficients
                             + other.coefficients)

    def __neg__(self):
        return InvariantForm(self.degree, -self.coefficients)

    def __mul__(self, factor):
        return InvariantForm(self.degree, self.coefficients
                             * _rational(factor))

    __rmul__ = __mul__

    def is_zero(self):
        return all(c == 0 for c in self.coefficients)

    def __repr__(self):
        terms = [f'{c}*e{"".join(str(i + 1) for i in idx)}'
                 for c, idx in zip(self.coefficients, _INDICES[self.degree])
                 if c != 0]
        return f'InvariantForm({" + ".join(terms) or "0"})'


class InvariantACS:
    """
    Left-invariant almost complex structure.

    Parameters
    ----------
    matrix : (4, 4) array_like
        action on the basis vectors, ``matrix[i, j]`` is the i-th component
        of ``J e_j``. Must square to minus the identity and induce the
        orientation ``e1234``.
    """

    def __init__(self, matrix):
        matrix = sympy.Matrix(4, 4, [_rational(x) for x in
                                     _np.asarray(matrix).ravel().tolist()])
        if matrix * matrix != -sympy.eye(4):
            raise ValueError('J does not square to -Id')
        self.matrix = matrix
        self.values = _np.array(matrix.tolist(), dtype=float)
        # induced orientation through the averaged Euclidean metric
        g = pointwise.average_metric(_np.eye(4), self.values)
        if pointwise.pfaffian(pointwise.two_form_vector(
                self.values.T @ g)) <= 0:
            raise ValueError('J does not induce the orientation e1234')

    @classmethod
    def standard(cls):
        """Structure with ``J e1 = e2`` and ``J e3 = e4``."""
        return cls(pointwise.standard_acs())

    def __eq__(self, other):
        return isinstance(other, InvariantACS) and self.matrix == other.matrix


class LieAlgebraModel:
    r"""
    Four-dimensional nilpotent Lie algebra given by its structure equations.

    Parameters
    ----------
    differentials : dict
        ``{k: {(i, j): c}}`` with 1-based indices, meaning
        :math:`de^k = \sum c\, e^i\wedge e^j`. Missing entries are zero.
    name : str
        label used in logs and reports

    Notes
    -----
    Brackets follow from :math:`de^k(X, Y) = -e^k([X, Y])`. The Jacobi
    identity is equivalent to :math:`d^2 = 0` on 1-forms and is checked at
    construction, as is nilpotency of the lower central series.
    """

    def __init__(self, differentials=None, name='model'):
        self.name = name
        self.d1 = sympy.zeros(6, 4)
        pairs = _INDICES[2]
        for k, terms in (differentials or {}).items():
            if not 1 <= k <= 4:
                raise ValueError(f'coframe index {k} outside 1..4')
            for (i, j), c in terms.items():
                if not (1 <= i <= 4 and 1 <= j <= 4) or i == j:
                    raise ValueError(f'invalid wedge index e{i}{j}')
                sign = 1 if i < j else -1
                row = pairs.index(tuple(sorted((i - 1, j - 1))))
                self.d1[row, k - 1] += sign * _rational(c)
        self._d = {}
        if not (self.ce_matrix(2) * self.ce_matrix(1)).is_zero_matrix:
            raise JacobiViolation(f'{name}: d^2 != 0 on 1-forms')
        self.brackets = self._bracket_tensor()
        self.numeric_brackets = _np.array(
            [[[float(self.brackets[i][j][k]) for k in range(4)]
              for j in range(4)] for i in range(4)])
        if not self._is_nilpotent():
            raise ValueError(f'{name} is not nilpotent')

    def _bracket_tensor(self):
        pairs = _INDICES[2]
        C = [[[sympy.Integer(0)] * 4 for _ in range(4)] for _ in range(4)]
        for row, (i, j) in enumerate(pairs):
            for k in range(4):
                C[i][j][k] = -self.d1[row, k]
                C[j][i][k] = self.d1[row, k]
        return C

    def bracket(self, x, y):
        """Bracket of two vectors given by their components."""
        x = sympy.Matrix(x)
        y = sympy.Matrix(y)
        out = sympy.zeros(4, 1)
        for i in range(4):
            for j in range(4):
                if x[i] == 0 or y[j] == 0:
                    continue
                for k in range(4):
                    out[k] += x[i] * y[j] * self.brackets[i][j][k]
        return out

    def _is_nilpotent(self):
        current = sympy.eye(4)
        for _ in range(5):
            spanned = [self.bracket(sympy.eye(4)[:, i], current[:, n])
                       for i in range(4) for n in range(current.shape[1])]
            stacked = sympy.Matrix.hstack(*spanned)
            if stacked.is_zero_matrix:
                return True
            basis = stacked.columnspace()
            current = sympy.Matrix.hstack(*basis)
        return False

    def ce_matrix(self, p):
        """
        Matrix of the Chevalley-Eilenberg differential on p-forms.

        Returns
        -------
        D : sympy.Matrix
            ``C(4, p+1) x C(4, p)`` matrix, zero for p = 4
        """
        if p in self._d:
            return self._d[p]
        if p == 4:
            return sympy.zeros(1, 1)
        source = _INDICES[p]
        target = {idx: n for n, idx in enumerate(_INDICES[p + 1])}
        D = sympy.zeros(len(target), len(source))
        for col, idx in enumerate(source):
            for m, i in enumerate(idx):
                for row, pair in enumerate(_INDICES[2]):
                    c = self.d1[row, i]
                    if c == 0:
                        continue
                    sequence = idx[:m] + pair + idx[m + 1:]
                    key, sign = _sort_sign(sequence)
                    if sign:
                        D[target[key], col] += (-1) ** m * sign * c
        self._d[p] = D
        return D

    def __repr__(self):
        return f'LieAlgebraModel({self.name!r})'


def ce_d(model, form):
    """
    Chevalley-Eilenberg differential of an invariant form.

    Parameters
    ----------
    model : LieAlgebraModel
    form : InvariantForm
        p-form with p <= 3

    Returns
    -------
    d_form : InvariantForm
    """
    if form.degree >= 4:
        raise DegreeOverflow('d of a 4-form')
    return InvariantForm(form.degree + 1,
                         model.ce_matrix(form.degree) * form.coefficients)


def _column_basis(matrix):
    if matrix.shape[1] == 0 or matrix.is_zero_matrix:
        return []
    return matrix.columnspace()


def invariant_cohomology(model, p):
    """
    Invariant de Rham cohomology in degree p.

    Parameters
    ----------
    model : LieAlgebraModel
    p : int
        degree 0..4

    Returns
    -------
    betti : int
        dimension of ``ker d / im d``
    representatives : list of InvariantForm
        closed forms whose classes form a basis
    """
    closed = model.ce_matrix(p).nullspace() if p < 4 \
        else list(sympy.eye(1).columnspace())
    exact = _column_basis(model.ce_matrix(p - 1)) if p > 0 else []
    chosen = list(exact)
    representatives = []
    rank = len(exact)
    for z in closed:
        trial = sympy.Matrix.hstack(*(chosen + [z]))
        if trial.rank() > rank:
            chosen.append(z)
            rank += 1
            representatives.append(InvariantForm(p, list(z)))
    return len(representatives), representatives


def wedge_pairing(alpha, beta):
    r"""Coefficient of :math:`e^{1234}` in :math:`\alpha\wedge\beta`."""
    a = alpha.coefficients
    b = beta.coefficients
    return (a[0] * b[5] - a[1] * b[4] + a[2] * b[3]
            + a[3] * b[2] - a[4] * b[1] + a[5] * b[0])


def intersection_form(model):
    """
    Cup product pairing on invariant 2-classes.

    Returns
    -------
    Q : sympy.Matrix
        ``b2 x b2`` symmetric matrix
    representatives : list of InvariantForm
    """
    _, representatives = invariant_cohomology(model, 2)
    Q = sympy.Matrix(len(representatives), len(representatives),
                     lambda i, j: wedge_pairing(representatives[i],
                                                representatives[j]))
    return Q, representatives


def _signature(Q):
    if Q.shape[0] == 0:
        return 0, 0
    eigenvalues = _np.linalg.eigvalsh(_np.array(Q.tolist(), dtype=float))
    return int(_np.sum(eigenvalues > 1e-10)), int(_np.sum(eigenvalues < -1e-10))


def _anti_invariant_basis(J):
    # columns spanning {alpha : alpha(J., J.) = -alpha} in the pair basis
    columns = []
    for n in range(6):
        e = [0] * 6
        e[n] = 1
        A = _two_form_matrix(e)
        pulled = J.matrix.T * A * J.matrix
        columns.append(_two_form_vector(A - pulled) / 2)
    return sympy.Matrix.hstack(*columns).columnspace()


def _two_form_matrix(coefficients):
    A = sympy.zeros(4, 4)
    for c, (i, j) in zip(coefficients, _INDICES[2]):
        A[i, j] = c
        A[j, i] = -c
    return A


def _two_form_vector(A):
    return sympy.Matrix([A[i, j] for i, j in _INDICES[2]])


def invariant_h_pm(model, J, g=None):
    r"""
    Invariant :math:`h^-_J`, :math:`h^+_J` and :math:`b^+`.

    :math:`h^-_J` is the dimension of the closed invariant
    J-anti-invariant forms. It is also computed as the rank of their image
    in cohomology, and both counts must agree.

    Parameters
    ----------
    model : LieAlgebraModel
    J : InvariantACS
    g : {None, (4, 4) array_like}
        J-compatible inner product, Euclidean if None

    Returns
    -------
    h_minus : int
    h_plus : int
    b_plus : int
    """
    g = _np.eye(4) if g is None else _np.asarray(g, dtype=float)
    pointwise.fundamental_form(g, J.values)
    anti = sympy.Matrix.hstack(*_anti_invariant_basis(J))
    D2 = model.ce_matrix(2)
    h_minus = anti.shape[1] - (D2 * anti).rank()

    closed_anti = [anti * v for v in (D2 * anti).nullspace()]
    exact = _column_basis(model.ce_matrix(1))
    base_rank = len(exact)
    stacked = sympy.Matrix.hstack(*(exact + closed_anti)) if \
        (exact or closed_anti) else sympy.zeros(6, 0)
    in_cohomology = (stacked.rank() if stacked.shape[1] else 0) - base_rank
    if in_cohomology != h_minus:
        raise DimensionMismatch(
            f'{h_minus} closed anti-invariant forms but {in_cohomology} '
            f'independent classes')

    Q, representatives = intersection_form(model)
    b_plus, _ = _signature(Q)
    b2 = len(representatives)
    if h_minus > b_plus:
        raise DimensionMismatch(f'h^- = {h_minus} exceeds b^+ = {b_plus}')
    _logger.debug('%s: b2 = %d, b+ = %d, h- = %d', model.name, b2, b_plus,
                  h_minus)
    return h_minus, b2 - h_minus, b_plus


def _is_constant(value):
    if callable(value):
        return False
    array = _np.asarray(value, dtype=float)
    return array.ndim == 0 or bool(_np.all(array == array.ravel()[0]))


def kodaira_family_structure(f, l, s):
    r"""
    Invariant structure with fundamental form :math:`f\omega + l\beta +
    sJ\beta`, :math:`\beta = e^{13} - e^{24}`, for the Euclidean inner
    product.
    """
    omega = _np.array([1, 0, 0, 0, 0, 1.0])
    beta = _np.array([0, 1, 0, 0, -1, 0.0])
    j_beta = _np.array([0, 0, 1, 1, 0, 0.0])
    omega_tilde = f * omega + l * beta + s * j_beta
    return InvariantACS(pointwise.acs_from_form(_np.eye(4), omega_tilde,
                                                tol=1e-12))


def kodaira_family_h(model, f, l, s, tol=1e-12):
    r"""
    Predicted :math:`h^-` of the invariant family :math:`J_{f,l,s}`.

    For constant coefficients the prediction is :math:`2 - \mathrm{rank}(l,
    s)`.

    Parameters
    ----------
    model : LieAlgebraModel
        Kodaira-Thurston model, in which :math:`\beta` and :math:`J\beta`
        are closed
    f, l, s : float
        constants with :math:`2f^2 + |\beta|^2(l^2 + s^2) = 2`

    Returns
    -------
    predicted : int

    Raises
    ------
    UnsupportedNonInvariant
        for non-constant coefficients, which need a grid on the nilmanifold
    """
    if not all(_is_constant(a) for a in (f, l, s)):
        raise UnsupportedNonInvariant(
            'non-constant coefficients are not invariant')
    f, l, s = (float(_np.asarray(a, dtype=float).ravel()[0]) for a in (f, l, s))
    defect = abs(2 * f ** 2 + 2 * (l ** 2 + s ** 2) - 2)
    if defect > tol:
        raise NormViolation(f'norm condition violated by {defect:.3e}')
    beta = InvariantForm.basis(2, 1, 3) + -InvariantForm.basis(2, 2, 4)
    j_beta = InvariantForm.basis(2, 1, 4) + InvariantForm.basis(2, 2, 3)
    if not (ce_d(model, beta).is_zero() and ce_d(model, j_beta).is_zero()):
        raise ValueError(f'beta is not closed in {model.name}')
    rank = 0 if max(abs(l), abs(s)) <= tol else 1
    return 2 - rank


def nijenhuis_invariant(model, J):
    r"""
    Nijenhuis tensor of an invariant structure.

    Uses :math:`N(X, Y) = \frac{1}{4}([JX, JY] - J[JX, Y] - J[X, JY] -
    [X, Y])`.

    Parameters
    ----------
    model : LieAlgebraModel
    J : InvariantACS

    Returns
    -------
    N : (4, 4, 4) ndarray
        ``N[i, j]`` is the vector :math:`N(e_i, e_j)`
    image : list of ndarray
        basis of the span of all values
    """
    Jm = J.matrix
    N = _np.zeros((4, 4, 4))
    values = []
    for i in range(4):
        for j in range(4):
            X = sympy.eye(4)[:, i]
            Y = sympy.eye(4)[:, j]
            value = (model.bracket(Jm * X, Jm * Y)
                     - Jm * model.bracket(Jm * X, Y)
                     - Jm * model.bracket(X, Jm * Y)
                     - model.bracket(X, Y)) / 4
            N[i, j] = [float(v) for v in value]
            values.append(value)
    image = _column_basis(sympy.Matrix.hstack(*values))
    return N, [_np.array([float(v) for v in b]) for b in image]


def invariant_tame_indicator(model, J, g=None):
    """
    Taming criterion ``b+ - h- >= 1`` for an invariant integrable structure.

    Returns
    -------
    difference : int
    verdict : str
    """
    from ..anti_invariant import tame_verdict

    h_minus, _, b_plus = invariant_h_pm(model, J, g)
    N, _ = nijenhuis_invariant(model, J)
    return tame_verdict(b_plus, h_minus,
                        heuristic=bool(_np.any(_np.abs(N) > 1e-12)))
