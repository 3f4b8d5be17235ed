"""Figure regeneration from persisted simulation output.

This package never computes physics.  It reads the CSV files (and JSON
sidecars) written by the `mqnmr` command-line tool and turns them into
static figures; entanglement-bound reference lines are taken from the
`mqnmr bound-table` output rather than recomputed.
"""

from .render import build_figure, render
from .tables import FigureDataError, FigureSpec, Table, load_table, resolve_bounds

__all__ = [
    "FigureDataError",
    "FigureSpec",
    "Table",
    "build_figure",
    "load_table",
    "render",
    "resolve_bounds",
]

__version__ = "0.1.0"
