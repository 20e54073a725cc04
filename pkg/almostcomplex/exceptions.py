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
Exceptions raised by almostcomplex.

Input-contract failures are ``ValueError`` subclasses, numerical failures
are ``RuntimeError`` subclasses. All of them share the base class
`AlmostComplexError`.
"""

__all__ = [
    'AlmostComplexError',
    'DegenerateMetric', 'IncompatiblePair', 'NotOnTwistorFiber',
    'InputNotAntiInvariant', 'DegreeOverflow', 'DimensionMismatch',
    'NormViolation', 'IdenticalStructures', 'FrameDegenerate',
    'JacobiViolation', 'UnknownPreset', 'UnsupportedNonInvariant',
    'RhsNotInRange', 'DegenerateCandidate', 'ConfigError',
    'SolverDivergence', 'GapUndetected', 'NewtonDivergence', 'TamingLost',
]


class AlmostComplexError(Exception):
    """Base class of all errors raised by almostcomplex."""


class DegenerateMetric(AlmostComplexError, ValueError):
    """Metric is not symmetric positive definite."""


class IncompatiblePair(AlmostComplexError, ValueError):
    """Metric and almost complex structure are not compatible."""


class NotOnTwistorFiber(AlmostComplexError, ValueError):
    """2-form is not self-dual or does not have norm squared 2."""


class InputNotAntiInvariant(AlmostComplexError, ValueError):
    """2-form is not anti-invariant under the almost complex structure."""


class DegreeOverflow(AlmostComplexError, ValueError):
    """Form degree leaves the range 0..4."""


class DimensionMismatch(AlmostComplexError, ValueError):
    """A computed space has an unexpected dimension."""


class NormViolation(AlmostComplexError, ValueError):
    """Pointwise norm constraint of a family is violated."""


class IdenticalStructures(AlmostComplexError, ValueError):
    """Two almost complex structures agree up to sign everywhere."""


class FrameDegenerate(AlmostComplexError, ValueError):
    """No nonvanishing frame of the anti-invariant bundle was found."""


class JacobiViolation(AlmostComplexError, ValueError):
    """Structure constants violate the Jacobi identity."""


class UnknownPreset(AlmostComplexError, KeyError):
    """Requested Lie algebra preset does not exist."""


class UnsupportedNonInvariant(AlmostComplexError, ValueError):
    """Non-constant data passed to an invariant computation."""


class RhsNotInRange(AlmostComplexError, ValueError):
    """Right-hand side has components along the excluded harmonics."""


class DegenerateCandidate(AlmostComplexError, ValueError):
    """Candidate 2-form has a nonpositive square somewhere."""


class ConfigError(AlmostComplexError, ValueError):
    """Experiment configuration is malformed."""


class SolverDivergence(AlmostComplexError, RuntimeError):
    """An iterative solver did not reach its tolerance."""


class GapUndetected(AlmostComplexError, RuntimeError):
    """Eigenvalue spectrum shows no clear gap above the kernel."""


class NewtonDivergence(SolverDivergence):
    """
    Newton iteration failed.

    Parameters
    ----------
    message : str
        Error description
    residuals : list of float
        Residual history up to the failure
    """

    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = list(residuals) if residuals is not None else []


class TamingLost(AlmostComplexError, RuntimeError):
    """Candidate symplectic form stopped taming the structure."""
