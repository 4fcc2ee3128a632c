"""Render delta-sweep CSV tables as log-log comparison charts.

The input contract is the nine-column CSV emitted by ``multiris
delta-sweep``.  This package never recomputes any of the numbers; it
only draws what the table says.
"""

from .plot import build_figure, render
from .reader import COLUMNS, SchemaError, SweepRow, SweepTable, read_sweep

__version__ = "0.1.0"

__all__ = [
    "COLUMNS",
    "SchemaError",
    "SweepRow",
    "SweepTable",
    "build_figure",
    "read_sweep",
    "render",
]
