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
Reading and writing fields, run records and result tables.

A field dump is a raw little-endian float64 file with a JSON sidecar of
the same stem that records the kind, degree, shape and grid. Run records
are JSON with floats rounded to a fixed number of significant digits, so
that identical runs give byte-identical files.
"""

import json
import logging
from pathlib import Path

import numpy as np
import pandas as pd

from .exceptions import ConfigError, DimensionMismatch
from .fields import GridChart, FormField, MetricField, ACSField

__all__ = ['RECORD_PRECISION', 'round_floats', 'to_json', 'write_record',
           'read_record', 'write_table', 'dump_field', 'load_field']

_logger = logging.getLogger(__name__)

RECORD_PRECISION = 12
_DTYPE = '<f8'


def round_floats(value, precision=RECORD_PRECISION):
    """Round every float in a nested record to ``precision`` digits."""
    if isinstance(value, dict):
        return {str(k): round_floats(v, precision) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_floats(v, precision) for v in value]
    if isinstance(value, np.ndarray):
        return round_floats(value.tolist(), precision)
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not np.isfinite(value):
            return None
        return float(f'{value:.{precision}g}')
    return value


def to_json(record, precision=RECORD_PRECISION):
    """Deterministic JSON text of a record."""
    return json.dumps(round_floats(record, precision), sort_keys=True,
                      indent=2) + '\n'


def write_record(record, path, precision=RECORD_PRECISION):
    """
    Write a JSON run record.

    Parameters
    ----------
    record : dict
    path : str or Path
    precision : int
        significant digits of floats

    Returns
    -------
    path : Path
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_json(record, precision))
    _logger.debug('wrote record %s', path)
    return path


def read_record(path):
    """Read a JSON run record."""
    with open(path) as handle:
        return json.load(handle)


def write_table(rows, columns, path, precision=RECORD_PRECISION):
    """
    Write a CSV table.

    Parameters
    ----------
    rows : list of sequence
        one entry per row, None for missing values
    columns : list of str
    path : str or Path

    Returns
    -------
    table : DataFrame
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    table = pd.DataFrame([round_floats(list(r), precision) for r in rows],
                         columns=columns)
    table.to_csv(path, index=False, float_format=f'%.{precision}g')
    _logger.debug('wrote table %s with %d rows', path, len(table))
    return table


def _describe(field):
    if isinstance(field, FormField):
        return 'form', field.components, {'degree': field.degree}
    if isinstance(field, MetricField):
        return 'metric', field.values, {}
    if isinstance(field, ACSField):
        return 'acs', field.values, {}
    raise TypeError(f'cannot dump {type(field).__name__}')


def dump_field(field, path, metadata=None):
    """
    Write a field as raw float64 data plus a JSON sidecar.

    Parameters
    ----------
    field : {FormField, MetricField, ACSField}
    path : str or Path
        stem of the two files, suffixes are replaced by ``.bin`` and
        ``.json``
    metadata : {None, dict}
        stored in the sidecar

    Returns
    -------
    binary, sidecar : Path
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    kind, values, extra = _describe(field)
    binary = path.with_suffix('.bin')
    sidecar = path.with_suffix('.json')
    np.ascontiguousarray(values, dtype=_DTYPE).tofile(binary)
    record = {
        'kind': kind,
        'shape': list(values.shape),
        'dtype': _DTYPE,
        'resolution': field.chart.resolution,
        'periods': [float(p) for p in field.chart.periods],
        'file': binary.name,
        'metadata': {} if metadata is None else metadata,
    }
    record.update(extra)
    write_record(record, sidecar)
    _logger.info('dumped %s field to %s', kind, binary)
    return binary, sidecar


def load_field(path):
    """
    Read a field written by `dump_field`.

    Parameters
    ----------
    path : str or Path
        sidecar, binary or common stem

    Returns
    -------
    field : {FormField, MetricField, ACSField}
    metadata : dict
    """
    sidecar = Path(path).with_suffix('.json')
    record = read_record(sidecar)
    try:
        kind = record['kind']
        shape = tuple(record['shape'])
        chart = GridChart(record['resolution'], record['periods'])
    except KeyError as err:
        raise ConfigError(f'{sidecar}: missing key {err.args[0]!r}') from None
    values = np.fromfile(sidecar.with_name(record['file']),
                         dtype=record.get('dtype', _DTYPE))
    if values.size != int(np.prod(shape)):
        raise DimensionMismatch(f'{sidecar}: {values.size} values for shape '
                                f'{shape}')
    values = values.reshape(shape).astype(float)
    if kind == 'form':
        field = FormField(chart, record['degree'], values)
    elif kind == 'metric':
        field = MetricField(chart, values)
    elif kind == 'acs':
        field = ACSField(chart, values)
    else:
        raise ConfigError(f'{sidecar}: unknown field kind {kind!r}')
    return field, record.get('metadata', {})
