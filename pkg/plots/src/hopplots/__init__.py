"""Offline figure rendering for hopenergy CSV sweeps."""

from .figures import FIGURES, FigureDef
from .render import FigureSpec, SchemaError, load_csv, render

__version__ = "0.1.0"
