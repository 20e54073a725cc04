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
almostcomplex: anti-invariant cohomology in dimension four
==========================================================
almostcomplex computes the J-anti-invariant cohomology of almost complex
structures on the flat 4-torus and on invariant nilmanifold models,
checks the closed-form predictions for explicit families of structures
and solves the symplectic Calabi-Yau equation by Newton iteration. It is
built on the Python ecosystem for scientific computing (numpy, scipy,
scikit-learn, sympy, matplotlib).

"""

__version__ = '0.1.0'

from .exceptions import *
from .fields import *
from .calculus import *
from .anti_invariant import *
from .families import *
from .hermitian import *
from .calabi_yau import *
from .plotting import *
from .utils import *
from . import pointwise
from . import lie
from .config import ExperimentConfig, load_config
