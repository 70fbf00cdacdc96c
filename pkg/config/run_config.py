# coding: utf-8
"""Run configuration of the command line interface

Values come from three layers: built-in defaults, an optional flat
``key = value`` file (``#`` comments, keys are the long flag names with
'-' replaced by '_') and finally the command line flags.
"""

import dataclasses
import logging
import math
import os

import numpy as np

from ..fock.fockspace import ModeConfig
from ..kernel.qkernel import DeformationParams
from ..tools import misc
from ..tools.errors import ArgumentError, ConfigurationError
from . import config as defaults

logger = logging.getLogger(__name__)

# file keys that differ from the field name
KEY_ALIASES = {'lambda': 'lambdas'}

# arguments each eval function needs
EVAL_REQUIRES = {'bracket': ('x',),
                 'factorial': ('n',),
                 'pochhammer': ('a', 'n'),
                 'exp': ('x',),
                 'psi01': ('a', 'x'),
                 'gaussian': ('profile',)}


def _int_list(value):
    return tuple(misc.to_list(value, int))


def _float_list(value):
    return tuple(misc.to_list(value, float))


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Everything a CLI run depends on, echoed in the report"""
    command: str
    p: float = 0.5
    theta: float = 0.
    theta_pi_over: int = None
    modes: int = None
    cutoff: tuple = (4,)
    total_cutoff: int = None
    suite: str = 'all'
    exact: bool = False
    tolerance: float = None
    lambdas: tuple = None
    window: int = None
    r: tuple = None
    word: tuple = None
    profile: tuple = None
    method: str = 'series'
    fn: str = None
    x: float = None
    a: float = None
    n: int = None
    base: float = None
    nmax: int = defaults.PROBE_MAX_WORD_LENGTH
    alphabet: int = defaults.PROBE_MAX_ALPHABET
    resolve: bool = False
    jobs: int = defaults.N_JOBS
    out: str = None
    format: str = 'json'
    verbose: int = 0
    config: str = None

    def __post_init__(self):
        if self.command not in defaults.COMMANDS:
            raise ConfigurationError(f'unknown command {self.command!r}, expected one of {defaults.COMMANDS}')
        if self.format not in defaults.OUTPUT_FORMATS:
            raise ConfigurationError(f'unknown output format {self.format!r}')
        if self.method not in defaults.COHERENT_METHODS:
            raise ConfigurationError(f'unknown construction method {self.method!r}')
        if self.jobs == 0:
            raise ConfigurationError('jobs must be non-zero')
        if self.theta_pi_over is not None:
            if self.theta_pi_over == 0:
                raise ConfigurationError('theta_pi_over must be non-zero')
            object.__setattr__(self, 'theta', math.pi / self.theta_pi_over)
        if self.command == 'eval':
            if self.fn not in defaults.EVAL_FUNCTIONS:
                raise ConfigurationError(f'eval needs --fn in {defaults.EVAL_FUNCTIONS}, got {self.fn!r}')
            missing = [key for key in EVAL_REQUIRES[self.fn] if getattr(self, key) is None]
            if missing:
                raise ConfigurationError(f'eval --fn {self.fn} needs {", ".join("--" + k for k in missing)}')
        if self.command in ('coherent', 'positive') and not self.r:
            raise ConfigurationError(f'{self.command} needs --r (one |z_i|^2 per mode)')
        if self.command == 'qsym' and not self.word and not self.resolve:
            raise ConfigurationError('qsym needs --word or --resolve')
        n_modes = self.n_modes
        for name in ('r', 'lambdas'):
            values = getattr(self, name)
            if values is not None and len(values) != n_modes:
                raise ConfigurationError(f'{len(values)} values for --{name} but {n_modes} modes')
        if len(self.cutoff) not in (1, n_modes):
            raise ConfigurationError(f'{len(self.cutoff)} cutoffs given for {n_modes} modes')
        # fails early on p <= 0 and similar
        self.params

    @property
    def n_modes(self):
        if self.modes is not None:
            return self.modes
        for values in (self.r, self.lambdas, self.cutoff if len(self.cutoff) > 1 else None):
            if values:
                return len(values)
        return 2

    @property
    def params(self):
        tolerance = self.tolerance if self.tolerance is not None else defaults.TOLERANCE
        return DeformationParams(p=self.p, theta=self.theta, tolerance=tolerance,
                                 classical_limit=self.p == 1, exact=self.exact)

    def mode_config(self):
        cutoff = self.cutoff[0] if len(self.cutoff) == 1 else self.cutoff
        return ModeConfig(self.n_modes, cutoff, self.params, self.total_cutoff)

    def describe(self):
        record = {}
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            record[misc.snake_to_camel(field.name)] = list(value) if isinstance(value, tuple) else value
        record['nModes'] = self.n_modes
        return record

    @classmethod
    def from_args(cls, args):
        """Defaults, then the --config file, then the flags set on the command line

        Args:
            args (argparse.Namespace): parsed flags; unset flags are None

        Raises:
            ConfigurationError: unknown or duplicate file keys, inconsistent values
            ArgumentError: invalid deformation parameters
        """
        values = {}
        if getattr(args, 'config', None):
            values.update(read_run_config(args.config))
        for field in dataclasses.fields(cls):
            flag = getattr(args, field.name, None)
            if flag is not None:
                values[field.name] = flag
        return cls(**values)


LIST_CASTERS = {'cutoff': _int_list, 'word': _int_list, 'profile': _int_list,
                'r': _float_list, 'lambdas': _float_list}
TYPE_CASTERS = {bool: misc.to_bool, int: int, float: float, str: str}


def _caster(name):
    if name in LIST_CASTERS:
        return LIST_CASTERS[name]
    field_type = {f.name: f.type for f in dataclasses.fields(RunConfig)}[name]
    return TYPE_CASTERS[field_type]


def read_run_config(filepath):
    """Read a flat key = value run-config file

    Raises:
        ConfigurationError: missing file, malformed line, unknown or duplicate key
    """
    if not misc.exists(filepath):
        raise ConfigurationError(f'run-config file not found: {filepath}')
    try:
        rows = np.loadtxt(filepath, str, delimiter="=", comments='#', ndmin=2)
    except ValueError as error:
        raise ConfigurationError(f'malformed run-config file {filepath}: {error}')
    known = {f.name for f in dataclasses.fields(RunConfig)} - {'command', 'config'}
    values = {}
    for row in rows:
        if len(row) != 2:
            raise ConfigurationError(f'expected key = value lines in {os.path.basename(filepath)}')
        key = row[0].strip()
        key = KEY_ALIASES.get(key, key)
        if key not in known:
            raise ConfigurationError(f'unknown key {row[0].strip()!r} in {os.path.basename(filepath)}')
        if key in values:
            raise ConfigurationError(f'duplicate key {key!r} in {os.path.basename(filepath)}')
        try:
            values[key] = _caster(key)(row[1].strip())
        except (ValueError, ArgumentError) as error:
            raise ConfigurationError(f'bad value for {key!r}: {error}')
    logger.debug(f'[read_run_config] {filepath}: {sorted(values)}')
    return values
