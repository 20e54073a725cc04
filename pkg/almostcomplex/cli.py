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
Command line interface.

::

    almostcomplex run --config experiment.json [--seed 1] [--out-dir out]
    almostcomplex reproduce lie-models
    almostcomplex validate-config --config experiment.json
    almostcomplex dump-field --config experiment.json --target structure

Exit status is 0 on success, 1 when a computation fails or a suite check
does not pass and 2 for invalid configuration.
"""

import argparse
import json
import logging
import sys
from pathlib import Path

import pandas as pd

from . import __version__
from .config import load_config, DUMP_TARGETS
from .exceptions import AlmostComplexError, ConfigError
from .io import write_record, write_table, dump_field, to_json
from .runner import run, execute
from .suites import SUITES, run_suites

__all__ = ['main']

_logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2


def _configure_logging(verbose):
    package = logging.getLogger('almostcomplex')
    if not any(isinstance(h, logging.StreamHandler)
               for h in package.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(
            '%(asctime)s %(name)s %(levelname)s: %(message)s'))
        package.addHandler(handler)
    level = logging.DEBUG if verbose else logging.INFO
    package.setLevel(level)
    # module loggers set their own level on import
    for name, logger in logging.root.manager.loggerDict.items():
        if name.startswith('almostcomplex.') and \
                isinstance(logger, logging.Logger):
            logger.setLevel(level)


def _add_overrides(parser):
    parser.add_argument('--seed', type=int, help='random seed override')
    parser.add_argument('--resolution-override', dest='resolution', type=int,
                        help='grid resolution override')
    parser.add_argument('--out-dir', dest='out_dir', type=Path,
                        help='output directory override')


def _parse_args(argv=None):
    parser = argparse.ArgumentParser(
        prog='almostcomplex',
        description='Anti-invariant cohomology of almost complex structures '
                    'in dimension four.')
    parser.add_argument('--version', action='version',
                        version=f'%(prog)s {__version__}')
    parser.add_argument('-v', '--verbose', action='store_true',
                        help='log solver iterations')
    commands = parser.add_subparsers(dest='command', required=True)

    run_parser = commands.add_parser('run', help='run an experiment file')
    run_parser.add_argument('--config', type=Path, required=True)
    _add_overrides(run_parser)

    reproduce = commands.add_parser('reproduce',
                                    help='run an acceptance suite')
    reproduce.add_argument('suite', help=f'one of {", ".join(SUITES)}, all')
    reproduce.add_argument('--seed', type=int, default=0)
    reproduce.add_argument('--out-dir', dest='out_dir', type=Path,
                           help='write the summary table as CSV')

    validate = commands.add_parser('validate-config',
                                   help='check an experiment file')
    validate.add_argument('--config', type=Path, required=True)

    dump = commands.add_parser('dump-field',
                               help='write a field of an experiment')
    dump.add_argument('--config', type=Path, required=True)
    dump.add_argument('--target', choices=DUMP_TARGETS, required=True)
    _add_overrides(dump)
    return parser.parse_args(argv)


def _load(args):
    config = load_config(args.config)
    return config.override(seed=getattr(args, 'seed', None),
                           resolution=getattr(args, 'resolution', None),
                           out_dir=getattr(args, 'out_dir', None))


def _error_record(err, config=None):
    record = {'error': type(err).__name__, 'message': str(err)}
    if config is not None:
        record.update(experiment=config.kind, name=config.name,
                      seed=config.seed)
        residuals = getattr(err, 'residuals', None)
        if residuals is not None:
            record['residuals'] = list(residuals)
        path = write_record(record, config.output_dir
                            / f'{config.name}.error.json')
        _logger.error('%s, record written to %s', err, path)
    print(to_json(record), file=sys.stderr)


def _run(args):
    config = _load(args)
    try:
        result, paths = run(config)
    except ConfigError:
        raise
    except AlmostComplexError as err:
        _error_record(err, config)
        return EXIT_FAILURE
    print(to_json(result.record))
    for path in paths:
        _logger.info('wrote %s', path)
    return EXIT_OK


def _reproduce(args):
    rows = run_suites(args.suite, seed=args.seed)
    table = pd.DataFrame(rows, columns=['suite', 'check', 'passed',
                                        'detail'])
    with pd.option_context('display.max_rows', None,
                           'display.max_colwidth', 60,
                           'display.width', 120):
        print(table.to_string(index=False))
    if args.out_dir is not None:
        write_table([list(row) for row in rows], list(table.columns),
                    args.out_dir / f'{args.suite}.csv')
    failed = int((~table['passed']).sum())
    print(f'{len(rows) - failed} of {len(rows)} checks passed')
    return EXIT_OK if failed == 0 else EXIT_FAILURE


def _validate(args):
    config = load_config(args.config)
    print(json.dumps({'valid': True, 'experiment': config.kind,
                      'config': config.to_dict()}, sort_keys=True, indent=2))
    return EXIT_OK


def _dump(args):
    config = _load(args)
    try:
        result = execute(config)
    except ConfigError:
        raise
    except AlmostComplexError as err:
        _error_record(err, config)
        return EXIT_FAILURE
    if args.target not in result.fields:
        raise ConfigError(f'--target: {config.kind} experiment has no '
                          f'{args.target!r} field')
    binary, sidecar = dump_field(
        result.fields[args.target],
        config.output_dir / f'{config.name}-{args.target}',
        metadata={'experiment': config.kind, 'seed': config.seed})
    print(to_json({'binary': str(binary), 'sidecar': str(sidecar)}))
    return EXIT_OK


_COMMANDS = {
    'run': _run,
    'reproduce': _reproduce,
    'validate-config': _validate,
    'dump-field': _dump,
}


def main(argv=None):
    """
    Entry point of the ``almostcomplex`` command.

    Parameters
    ----------
    argv : {None, list of str}
        arguments, ``sys.argv[1:]`` if None

    Returns
    -------
    status : int
    """
    args = _parse_args(argv)
    _configure_logging(args.verbose)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as err:
        _error_record(err)
        return EXIT_CONFIG
    except OSError as err:
        print(to_json({'error': type(err).__name__, 'message': str(err)}),
              file=sys.stderr)
        return EXIT_CONFIG
