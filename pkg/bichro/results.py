# -*- coding: utf-8 -*-
"""
Result tables: a pandas DataFrame with a fixed column schema, written as a
deterministic CSV with a provenance header.
"""

# Import this for type hints with classes
from __future__ import annotations

import logging
import os
import platform

import numpy as np
import pandas as pd
import scipy

_log = logging.getLogger(__name__)

FLOAT_FORMAT = "%.12g"


def library_versions() -> dict:
    from . import __version__
    return {
        'bichro': __version__,
        'numpy': np.__version__,
        'scipy': scipy.__version__,
        'pandas': pd.__version__,
        'python': platform.python_version(),
    }


#%%
class ResultTable:
    """
    Rows of one experiment under a fixed column schema.

    Examples:
    t = ResultTable(["zeta", "infidelity_shaped"])
    t.addRow(0.0, 1e-6)
    t.addRows([[0.1, 2e-6], [0.2, 3e-6]])
    t.setMeta("config_sha256", cfg.digest)
    t.toCsv("fig4.csv")
    """

    def __init__(self, columns: list, rows: list=None):
        if isinstance(columns, str):
            columns = [columns]
        if len(columns) == 0 or len(set(columns)) != len(columns):
            raise ValueError("Columns must be non-empty and unique, got %s" % columns)
        self._columns = list(columns)
        self._rows = []
        self._meta = dict()
        if rows is not None:
            self.addRows(rows)

    @property
    def columns(self) -> list:
        return list(self._columns)

    @property
    def meta(self) -> dict:
        return dict(self._meta)

    def __len__(self):
        return len(self._rows)

    def __repr__(self) -> str:
        return repr(self.toDataFrame())

    def addRow(self, *values):
        if len(values) != len(self._columns):
            raise ValueError("Row has %d values for %d columns %s" % (
                len(values), len(self._columns), self._columns))
        self._rows.append(tuple(values))

    def addRows(self, rows):
        for row in rows:
            self.addRow(*row)

    def setMeta(self, key: str, value):
        self._meta[key] = value

    def toDataFrame(self) -> pd.DataFrame:
        return pd.DataFrame(self._rows, columns=self._columns)

    def column(self, name: str) -> np.ndarray:
        return self.toDataFrame()[name].to_numpy()

    def header(self) -> str:
        '''Provenance comment lines, sorted by key.'''
        return "".join("# %s: %s\n" % (k, self._meta[k]) for k in sorted(self._meta))

    def toCsv(self, path: str) -> str:
        '''
        Writes the header comments and the table with 12 significant digits,
        ',' separators and '\\n' line endings. Returns the path written.
        '''
        folder = os.path.dirname(os.path.abspath(path))
        os.makedirs(folder, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(self.header())
            self.toDataFrame().to_csv(f, index=False, float_format=FLOAT_FORMAT,
                                      lineterminator="\n")
        _log.info("Wrote %d rows to %s", len(self._rows), path)
        return path

    @classmethod
    def fromCsv(cls, path: str) -> ResultTable:
        '''Reads a table written by toCsv, restoring the provenance header.'''
        meta = dict()
        with open(path, "r", encoding="utf-8") as f:
            for line in f:
                if not line.startswith("#"):
                    break
                key, _, value = line[1:].strip().partition(": ")
                meta[key] = value
        df = pd.read_csv(path, comment="#")
        table = cls(list(df.columns), df.itertuples(index=False, name=None))
        for k, v in meta.items():
            table.setMeta(k, v)
        return table
