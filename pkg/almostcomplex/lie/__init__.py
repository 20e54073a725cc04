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
The :mod:`almostcomplex.lie` module computes with left-invariant forms and
structures on four-dimensional nilpotent Lie algebras, where cohomology,
:math:`h^\pm_J` and the Nijenhuis tensor reduce to exact linear algebra
"""

from ._model import (
    InvariantForm, InvariantACS, LieAlgebraModel, ce_d,
    invariant_cohomology, wedge_pairing, intersection_form, invariant_h_pm,
    kodaira_family_structure, kodaira_family_h, nijenhuis_invariant,
    invariant_tame_indicator,
)
from ._geometry import (
    invariant_levi_civita, invariant_nabla_omega, invariant_lee_form,
    invariant_well_balanced, invariant_nabla_omega_residual,
)
from ._preset import (
    Preset, PRESETS, preset, parse_model, load_model, format_model,
)

__all__ = [
    "InvariantForm",
    "InvariantACS",
    "LieAlgebraModel",
    "ce_d",
    "invariant_cohomology",
    "wedge_pairing",
    "intersection_form",
    "invariant_h_pm",
    "kodaira_family_structure",
    "kodaira_family_h",
    "nijenhuis_invariant",
    "invariant_tame_indicator",
    "invariant_levi_civita",
    "invariant_nabla_omega",
    "invariant_lee_form",
    "invariant_well_balanced",
    "invariant_nabla_omega_residual",
    "Preset",
    "PRESETS",
    "preset",
    "parse_model",
    "load_model",
    "format_model",
]
