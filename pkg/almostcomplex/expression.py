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
Scalar field expressions of experiment files.

Expressions are arithmetic over the coordinates ``x1`` .. ``x4`` with the
constant ``pi``, the operators ``+ - * / **`` and the functions ``sin``,
``cos``, ``exp``, ``sqrt``, ``log`` and ``tanh``, for example
``0.1 * (cos(2 * pi * x1) - 1)``. They are parsed with :mod:`ast` and
checked node by node; nothing outside this grammar is ever evaluated.
"""

import ast

import numpy as np

from .exceptions import ConfigError

__all__ = ['Expression', 'parse_expression', 'evaluate_field']

VARIABLES = ('x1', 'x2', 'x3', 'x4')

_FUNCTIONS = {
    'sin': np.sin,
    'cos': np.cos,
    'exp': np.exp,
    'sqrt': np.sqrt,
    'log': np.log,
    'tanh': np.tanh,
}
_CONSTANTS = {'pi': np.pi}
_BINARY = {
    ast.Add: np.add,
    ast.Sub: np.subtract,
    ast.Mult: np.multiply,
    ast.Div: np.divide,
    ast.Pow: np.power,
}
_UNARY = {ast.USub: np.negative, ast.UAdd: np.positive}


class Expression:
    """
    Parsed scalar expression.

    Parameters
    ----------
    text : str

    Attributes
    ----------
    text : str
    variables : frozenset of str
        coordinates the expression depends on

    Raises
    ------
    ConfigError
        on syntax errors or names, operators and calls outside the grammar
    """

    def __init__(self, text):
        if not isinstance(text, str):
            raise ConfigError(f'expression must be a string, got {text!r}')
        self.text = text
        try:
            tree = ast.parse(text.strip(), mode='eval')
        except SyntaxError as err:
            raise ConfigError(f'cannot parse expression {text!r}: '
                              f'{err.msg}') from None
        self._tree = tree.body
        names = set()
        self._check(self._tree, names)
        self.variables = frozenset(names)

    def _check(self, node, names):
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or \
                    not isinstance(node.value, (int, float)):
                raise ConfigError(f'{self.text!r}: constant {node.value!r} '
                                  f'is not a number')
        elif isinstance(node, ast.Name):
            if node.id in VARIABLES:
                names.add(node.id)
            elif node.id not in _CONSTANTS:
                raise ConfigError(f'{self.text!r}: unknown name {node.id!r}')
        elif isinstance(node, ast.BinOp):
            if type(node.op) not in _BINARY:
                raise ConfigError(f'{self.text!r}: operator '
                                  f'{type(node.op).__name__} not allowed')
            self._check(node.left, names)
            self._check(node.right, names)
        elif isinstance(node, ast.UnaryOp):
            if type(node.op) not in _UNARY:
                raise ConfigError(f'{self.text!r}: operator '
                                  f'{type(node.op).__name__} not allowed')
            self._check(node.operand, names)
        elif isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) \
                    or node.func.id not in _FUNCTIONS:
                raise ConfigError(f'{self.text!r}: unknown function '
                                  f'{ast.unparse(node.func)!r}')
            if len(node.args) != 1 or node.keywords:
                raise ConfigError(f'{self.text!r}: {node.func.id} takes one '
                                  f'argument')
            self._check(node.args[0], names)
        else:
            raise ConfigError(f'{self.text!r}: {type(node).__name__} is not '
                              f'part of the expression grammar')

    def _evaluate(self, node, values):
        if isinstance(node, ast.Constant):
            return float(node.value)
        if isinstance(node, ast.Name):
            if node.id in _CONSTANTS:
                return _CONSTANTS[node.id]
            return values[node.id]
        if isinstance(node, ast.BinOp):
            return _BINARY[type(node.op)](self._evaluate(node.left, values),
                                          self._evaluate(node.right, values))
        if isinstance(node, ast.UnaryOp):
            return _UNARY[type(node.op)](self._evaluate(node.operand, values))
        return _FUNCTIONS[node.func.id](self._evaluate(node.args[0], values))

    def evaluate(self, **values):
        """
        Evaluate at coordinate values.

        Parameters
        ----------
        **values : float or ndarray
            ``x1`` .. ``x4``, only those in `variables` are required

        Returns
        -------
        value : float or ndarray
        """
        missing = self.variables - set(values)
        if missing:
            raise ConfigError(f'{self.text!r}: missing values for '
                              f'{sorted(missing)}')
        with np.errstate(all='ignore'):
            out = self._evaluate(self._tree, values)
        if not np.all(np.isfinite(out)):
            raise ConfigError(f'{self.text!r} is not finite everywhere')
        return out

    def __call__(self, chart):
        """Values on the grid points of ``chart``."""
        coordinates = dict(zip(VARIABLES, chart.coordinates()))
        return np.broadcast_to(self.evaluate(**coordinates),
                               chart.shape).copy()

    @property
    def is_constant(self):
        return not self.variables

    def __repr__(self):
        return f'Expression({self.text!r})'


def parse_expression(value):
    """
    Expression from a config value.

    Parameters
    ----------
    value : {str, int, float}
        numbers are taken as constant expressions

    Returns
    -------
    expression : Expression
    """
    if isinstance(value, bool):
        raise ConfigError(f'expected an expression, got {value!r}')
    if isinstance(value, (int, float)):
        return Expression(repr(float(value)))
    return Expression(value)


def evaluate_field(value, chart):
    """Grid values of a config expression or number."""
    return parse_expression(value)(chart)
