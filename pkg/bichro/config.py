# -*- coding: utf-8 -*-
"""
Experiment configuration: a flat key = value file, one key per line.

Example file:
    # Process distances of the exact MS gate
    experiment = fig5
    eta = 0.05
    epsilon = 0.04
    omega = 0.221
    zeta_grid = 0:1pi:9
    n_max = 20

The file has no sections; it is read with 'configparser' under a synthetic
section header, see https://docs.python.org/3/library/configparser.html.
"""

# Import this for type hints with classes
from __future__ import annotations

import configparser
import hashlib
import re

import numpy as np

from .dynamics import GateParams, GATE_TYPES
from .errors import ConfigError

EXPERIMENTS = ("fig3", "fig4", "fig5", "table1", "sweep", "calibrate")

_NUMBER_PI = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)?\s*(pi)?\s*$")


def parse_number(text) -> float:
    '''
    Float with an optional 'pi' suffix: "0.5pi", "pi", "-2pi", "1e-3".
    '''
    if isinstance(text, (int, float, np.integer, np.floating)):
        return float(text)
    m = _NUMBER_PI.match(str(text))
    if m is None or (m.group(1) is None and m.group(2) is None):
        raise ConfigError("Cannot read '%s' as a number" % text)
    value = float(m.group(1)) if m.group(1) is not None else 1.0
    return value * np.pi if m.group(2) else value


def parse_grid(text) -> np.ndarray:
    '''
    Grid from "start:stop:count" (inclusive linspace), "start:stop:count:open"
    (stop excluded) or a comma list. Non-empty and monotone.
    '''
    if isinstance(text, (list, tuple, np.ndarray)):
        grid = np.array([parse_number(v) for v in text], dtype=np.float64)
    else:
        text = str(text).strip()
        if ":" in text:
            parts = text.split(":")
            if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3].strip() != "open"):
                raise ConfigError("Grid '%s' must be start:stop:count[:open]" % text)
            try:
                count = int(parts[2])
            except ValueError:
                raise ConfigError("Grid count '%s' is not an integer" % parts[2])
            if count < 1:
                raise ConfigError("Grid '%s' is empty" % text)
            grid = np.linspace(parse_number(parts[0]), parse_number(parts[1]), count,
                               endpoint=len(parts) == 3)
        else:
            grid = np.array([parse_number(v) for v in text.split(",") if v.strip()], dtype=np.float64)
    if grid.size == 0:
        raise ConfigError("Grid '%s' is empty" % text)
    steps = np.diff(grid)
    if not (np.all(steps > 0) or np.all(steps < 0)):
        raise ConfigError("Grid '%s' is not monotone" % text)
    return grid


def parse_bool(text) -> bool:
    if isinstance(text, (bool, np.bool_)):
        return bool(text)
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ConfigError("Cannot read '%s' as a boolean" % text)


#%%
class ExperimentConfig:
    """
    Typed, validated experiment configuration.

    Keys and their types are fixed by KEY_TO_TYPE; unknown keys are errors.
    Values are kept parsed, so cfg['zeta_grid'] is an array.

    Examples:
    cfg = ExperimentConfig.fromConfig("configs/fig5.ini")
    cfg = cfg.withOverrides(n_max=16)
    params = cfg.toGateParams()
    """
    SECTION = "experiment"

    KEY_TO_TYPE = {
        'experiment': 'str',
        'gate_type': 'str',
        # GateParams
        'eta': 'float',
        'omega': 'float',
        'delta': 'float',
        'epsilon': 'float',
        'zeta': 'float',
        'phi': 'float',
        'num_ions': 'int',
        'loops': 'int',
        'nu': 'float',
        # Grids
        'time_grid': 'grid',
        'zeta_grid': 'grid',
        'omega_grid': 'grid',
        # Experiment specifics
        'n_bar': 'float',
        'n_t': 'float',
        'omega_max': 'float',
        'omega_constant': 'float',
        'total_cycles': 'float',
        'ramp_cycles': 'float',
        'sign_flip': 'str',
        'lamb_dicke': 'bool',
        'self_check_tol': 'float',
        # Numerics and output
        'n_max': 'int',
        'steps_per_cycle': 'int',
        'workers': 'int',
        'out': 'str',
    }

    PARSERS = {
        'str': lambda v: str(v).strip(),
        'float': parse_number,
        'int': lambda v: int(str(v).strip()),
        'grid': parse_grid,
        'bool': parse_bool,
    }

    GATE_KEYS = ('eta', 'omega', 'delta', 'epsilon', 'zeta', 'phi', 'num_ions', 'loops', 'nu')
    # Keys that change where or how fast a run happens, not what it computes
    UNHASHED_KEYS = ('out', 'workers')

    def __init__(self, values: dict=None):
        self._values = dict()
        for key, value in (values or dict()).items():
            key = key.strip().lower()
            if key not in self.KEY_TO_TYPE:
                raise ConfigError("Unknown configuration key '%s'" % key)
            try:
                self._values[key] = self.PARSERS[self.KEY_TO_TYPE[key]](value)
            except ConfigError:
                raise
            except (TypeError, ValueError) as e:
                raise ConfigError("Invalid value for '%s': %s" % (key, e))
        self.validate()

    def validate(self):
        exp = self._values.get('experiment')
        if exp is not None and exp not in EXPERIMENTS:
            raise ConfigError("Unknown experiment '%s', expected one of %s" % (exp, EXPERIMENTS))
        gate = self._values.get('gate_type')
        if gate is not None and gate not in GATE_TYPES:
            raise ConfigError("Unknown gate_type '%s', expected one of %s" % (gate, GATE_TYPES))
        for key in ('n_max', 'steps_per_cycle', 'workers'):
            if key in self._values and self._values[key] < 1:
                raise ConfigError("'%s' must be positive, got %d" % (key, self._values[key]))
        if 'steps_per_cycle' in self._values and self._values['steps_per_cycle'] < 64:
            raise ConfigError("'steps_per_cycle' must be at least 64, got %d" % self._values['steps_per_cycle'])

    #%% Factories
    @classmethod
    def fromString(cls, text: str) -> ExperimentConfig:
        cfg = configparser.ConfigParser(inline_comment_prefixes=("#",))
        try:
            cfg.read_string("[%s]\n%s" % (cls.SECTION, text))
        except configparser.Error as e:
            raise ConfigError("Malformed configuration: %s" % e)
        return cls(dict(cfg[cls.SECTION].items()))

    @classmethod
    def fromConfig(cls, path: str) -> ExperimentConfig:
        '''Reads a flat key = value file.'''
        try:
            with open(path, "r", encoding="utf-8") as f:
                text = f.read()
        except OSError as e:
            raise ConfigError("Cannot read configuration '%s': %s" % (path, e))
        return cls.fromString(text)

    @classmethod
    def fromDictionary(cls, values: dict) -> ExperimentConfig:
        return cls(values)

    def withOverrides(self, **kwargs) -> ExperimentConfig:
        '''New config with the given keys replaced; None values are skipped.'''
        merged = dict(self._values)
        merged.update({k: v for k, v in kwargs.items() if v is not None})
        return ExperimentConfig(merged)

    #%% Access
    def __getitem__(self, key: str):
        return self._values[key]

    def __contains__(self, key: str) -> bool:
        return key in self._values

    def get(self, key: str, default=None):
        return self._values.get(key, default)

    def keys(self):
        return self._values.keys()

    def toDictionary(self) -> dict:
        return dict(self._values)

    def __repr__(self) -> str:
        return "ExperimentConfig(%s)" % self._values

    def toGateParams(self, **overrides) -> GateParams:
        '''
        GateParams from the config, with keyword overrides on top. With a
        gate type and no explicit delta, δ is derived from ε.
        '''
        values = {k: self._values[k] for k in self.GATE_KEYS if k in self._values}
        values.update(overrides)
        gate = values.pop('gate_type', self._values.get('gate_type'))
        missing = [k for k in ('eta', 'omega', 'epsilon') if k not in values]
        if missing:
            raise ConfigError("Missing gate parameters: %s" % ", ".join(missing))
        if gate is not None and 'delta' not in values:
            values['delta'] = GateParams.expectedDelta(gate, values['epsilon'], values.get('nu', 1.0))
        if 'delta' not in values:
            raise ConfigError("Need either gate_type or delta.")
        return GateParams(gate_type=gate, **values)

    #%% Provenance
    def canonical(self) -> str:
        '''
        Sorted key = value text with values in a fixed numeric format. The
        output path and worker count are left out.
        '''
        def fmt(v):
            if isinstance(v, np.ndarray):
                return ",".join("%.12g" % x for x in v)
            if isinstance(v, float):
                return "%.12g" % v
            return str(v)
        keys = [k for k in sorted(self._values) if k not in self.UNHASHED_KEYS]
        return "".join("%s = %s\n" % (k, fmt(self._values[k])) for k in keys)

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.canonical().encode("utf-8")).hexdigest()
