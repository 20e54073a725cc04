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

"""Named Lie algebra models and the text format of model files"""

import logging as _logging
import re
from collections import namedtuple

import numpy as _np

from .. import pointwise
from ..exceptions import AlmostComplexError, ConfigError, UnknownPreset
from ._model import LieAlgebraModel, InvariantACS, InvariantForm, _rational

__all__ = ['Preset', 'PRESETS', 'preset', 'parse_model', 'load_model',
           'format_model']

_logger = _logging.getLogger(__name__)

Preset = namedtuple('Preset', ['model', 'J', 'g', 'omega'])

PRESETS = {
    'abelian': {},
    # de4 = e12, the Kodaira-Thurston nilmanifold
    'kodaira': {4: {(1, 2): 1}},
    'three-step': {3: {(1, 4): 1}, 4: {(1, 2): 1}},
}

_LINE = re.compile(r'de([1-4])=(.*)')
_TERM = re.compile(r'([+-]?)(\d+(?:\.\d*)?(?:/\d+)?)?\*?e([1-4])([1-4])')


def preset(name):
    """
    Model, structure, metric and fundamental form of a named example.

    Parameters
    ----------
    name : {'abelian', 'kodaira', 'three-step'}

    Returns
    -------
    preset : Preset
        ``J`` is the standard structure :math:`Je_1 = e_2`,
        :math:`Je_3 = e_4`, ``g`` the identity and ``omega`` equals
        :math:`e^{12} + e^{34}`

    Raises
    ------
    UnknownPreset
        if ``name`` is not a known preset
    """
    try:
        differentials = PRESETS[name]
    except KeyError:
        raise UnknownPreset(
            f'unknown preset {name!r}, choose from {sorted(PRESETS)}') from None
    model = LieAlgebraModel(differentials, name=name)
    J = InvariantACS.standard()
    g = pointwise.euclidean_metric()
    omega = InvariantForm(2, pointwise.fundamental_form(g, J.values).round()
                          .astype(int).tolist())
    return Preset(model, J, g, omega)


def _parse_rhs(rhs, lineno):
    if rhs == '0':
        return {}
    terms = {}
    position = 0
    for match in _TERM.finditer(rhs):
        if match.start() != position or (position > 0 and not match.group(1)):
            break
        sign, coefficient, i, j = match.groups()
        value = _rational(coefficient) if coefficient else _rational(1)
        if sign == '-':
            value = -value
        key = (int(i), int(j))
        terms[key] = terms.get(key, 0) + value
        position = match.end()
    if position != len(rhs) or not terms:
        raise ConfigError(f'line {lineno}: cannot parse {rhs!r}')
    return terms


def parse_model(text, name='model'):
    """
    Build a model from structure equations written as text.

    Each non-empty line reads like ``de4 = 1/2 e12 - e34``. Text after
    ``#`` is ignored. Coframe indices omitted from the text are closed.

    Parameters
    ----------
    text : str
    name : str

    Returns
    -------
    model : LieAlgebraModel

    Raises
    ------
    ConfigError
        on malformed lines or repeated coframe indices
    """
    differentials = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].replace(' ', '').replace('\t', '')
        if not line:
            continue
        match = _LINE.fullmatch(line)
        if match is None:
            raise ConfigError(f'line {lineno}: expected "de<k> = ...", '
                              f'got {raw.strip()!r}')
        k = int(match.group(1))
        if k in differentials:
            raise ConfigError(f'line {lineno}: de{k} given twice')
        differentials[k] = _parse_rhs(match.group(2), lineno)
    try:
        return LieAlgebraModel(differentials, name=name)
    except ValueError as err:
        if isinstance(err, AlmostComplexError):
            raise
        raise ConfigError(f'{name}: {err}') from err


def load_model(path):
    """Read a model file, see :func:`parse_model`."""
    with open(path) as handle:
        text = handle.read()
    _logger.debug('loading Lie model from %s', path)
    return parse_model(text, name=str(path))


def format_model(model):
    """Structure equations of ``model`` in the model file format."""
    pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    lines = []
    for k in range(4):
        terms = []
        for row, (i, j) in enumerate(pairs):
            c = model.d1[row, k]
            if c == 0:
                continue
            sign = '-' if c < 0 else '+'
            magnitude = '' if abs(c) == 1 else f'{abs(c)} '
            terms.append(f'{sign} {magnitude}e{i + 1}{j + 1}')
        if terms:
            rhs = ' '.join(terms)
            rhs = rhs[2:] if rhs.startswith('+ ') else '-' + rhs[2:]
            lines.append(f'de{k + 1} = {rhs}')
    return '\n'.join(lines) + '\n'
